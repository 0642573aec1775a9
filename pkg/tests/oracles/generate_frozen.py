import sympy as sp
x, y, a, z, lam_s = sp.symbols('x y a z lam', positive=True)
R = sp.Rational
# 1. lambda1, lambda2 at theta=1/5: cubic discriminant in zeta
t = R(1, 5); zeta = sp.symbols('zeta', positive=True)
cub = t*y**3 - zeta*y**2 + (t**2+1)*y - 2*zeta*t
d = sp.Poly(sp.discriminant(cub, y), zeta)
print("disc roots zeta^2:", [sp.N(r**2, 20) for r in sp.Poly(d).nroots(n=30) if r.is_real and r > 0])
# 2. triple root at theta2, lambda tilde
t2 = 1/sp.sqrt(17); lt = 54*sp.sqrt(17)/289
c2 = sp.expand(t2*y**3 - sp.sqrt(lt)*y**2 + (t2**2+1)*y - 2*sp.sqrt(lt)*t2)
print("triple:", {sp.N(sp.simplify(r), 20): m for r, m in sp.roots(sp.Poly(c2, y)).items()})
# 3. seven fixed points at (0.2, 0.75) and (0.1, 1)
for t, lam in ((R(1, 5), R(3, 4)), (R(1, 10), R(1))):
    zt = sp.sqrt(lam)
    den = t**2*x**2 + t*y**2 + 1
    e1 = sp.expand(x*den - (x**2 + t*y**2 + t**2))
    e2 = sp.expand(y*den - zt*(t*x**2 + y**2 + t))
    res = sp.Poly(sp.resultant(e1, e2, y), x, extension=True).sqf_part()
    sols = []
    for xr in res.nroots(n=40, maxsteps=200):
        if not (xr.is_real and xr > 0):
            continue
        py = sp.Poly(sp.N(e2.subs(x, xr), 50), y)
        for yr in py.nroots(n=40, maxsteps=200):
            if yr.is_real and yr > 0 and abs(e1.subs({x: xr, y: yr})) < 1e-25:
                sols.append((sp.N(xr**2, 16), sp.N(yr**2, 16)))
    print("fixed points", t, lam, sorted(set(sols)))
# 4. general-k critical fields via discriminant in a: k=3, theta=0.1
for k, t in ((3, R(1, 10)), (2, R(1, 5)), (4, R(1, 20))):
    b = (1 + t**2)/(2*t**2)
    P = sp.expand(a*x*(b + x)**k - (1 + x)**k)
    D = sp.Poly(sp.discriminant(P, x), a).sqf_part()
    roots = sorted(r for r in D.nroots(n=40, maxsteps=500) if r.is_real and r > 0)
    print("k", k, "theta", t, "lambda*:", sorted(sp.N(2*t**(k+1)/r, 20) for r in roots))
# 5. lemma1 at b=16, k=2
b = 16; k = 2
xs = sp.solve(x**2 + (2 - (b - 1)*(k - 1))*x + b, x)
print("x1,x2", [sp.N(v, 20) for v in sorted(xs)], "a_i", [sp.N(((1+v)/(b+v))**k/v, 20) for v in sorted(xs)])
# 6. general roots k=3 theta=0.1 lam=1, and theta=2 lam=5 k=3
for k, t, lam in ((3, R(1, 10), 1), (3, 2, 5), (2, R(1, 2), 1)):
    P = sp.Poly(sp.expand(z*(t**2 + t*z + 1)**k - lam*(2*t + z)**k), z)
    print("z1 roots", k, t, lam, [sp.N(r, 20) for r in P.nroots(n=40, maxsteps=500) if r.is_real and r > 0])
