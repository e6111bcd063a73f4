# The Klein solution: exact check, an Okamoto image and the alcove picture.
from fractions import Fraction

from painleve6.pvi import klein_curve, residual_degree_bound, residual_exact, x_from_solution
from painleve6.weyl import apply_to_solution, f4_canonical_form, reduce_to_alcove

curve = klein_curve()
print("theta:", curve.theta)
print("y(s) =", curve.y)
print("t(s) =", curve.t)

# P(y, y', y'', t) composed with the curve is a rational function of s.  It is
# zero iff it vanishes at more points than its degree can allow.
print("degree bound for the residual:", residual_degree_bound(curve))
print("residual is zero:", residual_exact(curve).is_zero())

# a few exact values along the curve
for s in (Fraction(3), Fraction(5, 4), Fraction(-2)):
    print(f"s = {s}: t = {curve.t(s)}, y = {curve.y(s)}")

# x is the auxiliary coordinate used to build the Fuchsian system later on
x = x_from_solution(curve)
print("x(3) =", x(Fraction(3)))

# R5 shifts every theta by -delta; the image is again an exact solution
img = apply_to_solution("R5", curve)
print("R5 image theta:", img.theta, "zero residual:", residual_exact(img).is_zero())

# The Klein theta is not in the fundamental alcove; reduce it.
red = reduce_to_alcove(curve.theta)
print("alcove point:", red.theta, "via", [g.value for g in red.word])
canon, word = f4_canonical_form(curve.theta)
print("F4 canonical form:", canon)
