"""Twisted forms by Galois descent: build the form, identify it, and run the finite-dimensional verifier."""
import argparse

from dkit.descent import DESCENT_CASES, find_quaternion_isomorphism, twisted_form, verify_main_theorem_fd
from dkit.linalg import FieldSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--case", default="quaternion", choices=sorted(DESCENT_CASES))
    args = ap.parse_args()

    A, setup, z = DESCENT_CASES[args.case]()
    form = twisted_form(A, setup, z)
    print(f"A = {A.name} (dim {A.dim}), S = {setup.S.name}, |Gamma| = {setup.order}")
    print("basis of B inside A (x) S:")
    for v in form.space.basis:
        print("  ", [FieldSpec.format(A.field, x) for x in v])
    if A.flavor == "associative":
        iso = find_quaternion_isomorphism(form.B, -1, -1)
        print("B ~ H(-1,-1):", iso is not None)
    for module in ("regular", "dual"):
        rep = verify_main_theorem_fd(A, setup, z, module=module)
        print(f"[{module}] dims:", rep.dims)
        for k, ok in rep.checks.items():
            print(f"    {'ok  ' if ok else 'FAIL'} {k}")


if __name__ == "__main__":
    main()
