"""First cohomology of the catalog algebras with small coefficient modules."""
from dkit.catalog import catalog_get, catalog_names, module_get
from dkit.errors import DkitError
from dkit.solvers import cent_space, h1_lie, hh1_assoc

MODULES = ["regular", "dual", "trivial", "V(1)", "V(2)", "V(3)"]


def row(name, module):
    A = catalog_get(name)
    try:
        M = module_get(A, module)
        H = h1_lie(A, M) if A.flavor == "lie" else hh1_assoc(A, M) if A.flavor == "associative" else None
    except DkitError:
        return None
    if H is None:
        return None
    return A.dim, M.dim, H.der.dim, H.inner.dim, H.dim, cent_space(A, M).dim


def main():
    print(f"{'algebra':<18} {'module':<8} {'dimA':>4} {'dimM':>4} {'Der':>4} {'IDer':>4} {'H1':>3} {'Cent':>4}")
    for name in catalog_names():
        for module in MODULES:
            r = row(name, module)
            if r is not None:
                print(f"{name:<18} {module:<8} " + " ".join(f"{x:>4}" for x in r))


if __name__ == "__main__":
    main()
