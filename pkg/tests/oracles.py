"""Reference computations that share no code path with the solver."""

from dicksonhit.f2poly import Polynomial, monomials_of_degree, to_vector


def total_square_images(n: int, d: int) -> list[int]:
    """Coordinates of every Sq^i(m), i >= 1, deg m = d - i, via the ring map x -> x + x^2."""
    basis = monomials_of_degree(n, d)
    xs = [Polynomial.var(n, k) for k in range(1, n + 1)]
    total = [x + x * x for x in xs]
    out = []
    for i in range(1, d + 1):
        for m in monomials_of_degree(n, d - i).monomials:
            image = Polynomial.monomial(m).substitute(total).homogeneous_parts().get(d)
            if image is not None:
                out.append(to_vector(image, basis))
    return out


def hit_space_by_enumeration(n: int, d: int) -> set[int]:
    """Every element of the degree-d hit space, listed explicitly."""
    span = {0}
    for v in total_square_images(n, d):
        if v not in span:
            span |= {s ^ v for s in span}
    return span
