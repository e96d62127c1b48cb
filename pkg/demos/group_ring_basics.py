"""
Group-ring arithmetic on words in two generators
================================================

Build formal linear combinations of reduced words in the letters u, v,
manipulate them algebraically, and evaluate them at a concrete pair of
unitary matrices.
"""

import numpy as np

from constrep import (
    averaging_element,
    evaluate,
    format_element,
    generator,
    parse_element,
    random_constrained,
)

# Elements can be parsed from plain text.  Words multiply letters with `*`,
# powers use `^`, and coefficients may be complex (written with `i`).
a = parse_element("2*u - v^-1 + (1+0.5i) * u*v")
print("parsed:  ", format_element(a))

# The same element can be assembled programmatically.
u = generator("u")
v = generator("v")
b = 2 * u - generator("v", -1) + (1 + 0.5j) * (u * v)
print("built:   ", format_element(b))
print("equal:   ", a == b)

# The ring operations: sums, products, integer powers, and the adjoint
# (which reverses words and conjugates coefficients).
x = averaging_element()  # u + u^-1 + v + v^-1
print("x:       ", format_element(x))
print("x*:      ", format_element(x.adjoint()))
print("x == x*: ", x == x.adjoint())

square = x ** 2
print("x^2:     ", format_element(square))

# Hand check: the constant term of x^2 counts the four cancelling
# letter/inverse products u*u^-1, u^-1*u, v*v^-1, v^-1*v.
empty_word = next(iter(parse_element("1").terms))
print("constant term of x^2:", square.terms[empty_word])

# Evaluating an element at a pair of unitaries replaces u, v by the
# matrices and letters of negative exponent by inverses (adjoints).
rep = random_constrained(dim=4, mu=2.0, seed=7)
matrix = evaluate(rep, x)
print("evaluated x at a constrained pair ->", matrix.shape, matrix.dtype)

# x is self-adjoint, so its matrix image is hermitian.
print("hermitian residual:", np.max(np.abs(matrix - matrix.conj().T)))
