"""Regenerate the JSON files in src/diaconf/catalog; tags are computed by the checkers."""
from pathlib import Path

from diaconf.conformal import current, zero_functor
from diaconf.dialgebra import (
    Algebra,
    Dialgebra,
    check_zero_identities,
    is_associative,
    is_commutative,
    is_di_jordan,
    is_di_variety,
    is_diassociative,
    is_jordan,
    is_leibniz,
    is_lie,
    leibniz_dialgebra,
    series,
)
from diaconf.identities import variety_axioms
from diaconf.specfile import spec_from_object, validate

OUT = Path(__file__).resolve().parents[1] / "src" / "diaconf" / "catalog"


def alg(names, table, name):
    return Algebra(names, table, name=name)


ALGEBRAS = {
    "abelian_1": alg(["a"], {}, "abelian_1"),
    "abelian_2": alg(["a", "b"], {}, "abelian_2"),
    "leibniz_2dim": alg(["a", "b"], {(0, 0): {1: 1}}, "leibniz_2dim"),
    "leibniz_nonlie": alg(["a", "b"], {(0, 1): {1: 1}}, "leibniz_nonlie"),
    "leibniz_3dim_nil": alg(["a", "b", "c"], {(0, 0): {2: 1}, (1, 1): {2: 1}, (0, 1): {2: 1}}, "leibniz_3dim_nil"),
    "lie_solv2": alg(["a", "b"], {(0, 1): {1: 1}, (1, 0): {1: -1}}, "lie_solv2"),
    "lie_heis3": alg(["x", "y", "z"], {(0, 1): {2: 1}, (1, 0): {2: -1}}, "lie_heis3"),
    "lie_sl2": alg(["e", "f", "h"], {(0, 1): {2: 1}, (1, 0): {2: -1}, (2, 0): {0: 2}, (0, 2): {0: -2},
                                      (2, 1): {1: -2}, (1, 2): {1: 2}}, "lie_sl2"),
    "assoc_upper2": alg(["E11", "E12", "E22"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}},
                         "assoc_upper2"),
    "nonassoc_2": alg(["a", "b"], {(0, 0): {1: 1}, (1, 0): {0: 1}}, "nonassoc_2"),
    "dual_numbers": alg(["one", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, "dual_numbers"),
    "idempotent_1": alg(["e"], {(0, 0): {0: 1}}, "idempotent_1"),
    "jordan_sym2": alg(["E11", "E22", "S"], {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 2): {2: "1/2"}, (2, 0): {2: "1/2"},
                                              (1, 2): {2: "1/2"}, (2, 1): {2: "1/2"}, (2, 2): {0: 1, 1: 1}},
                        "jordan_sym2"),
    "dijordan_sq": alg(["a", "b"], {(0, 0): {1: 1}}, "dijordan_sq"),
    "dijordan_nil3": alg(["a", "b", "c"], {(0, 1): {2: 1}}, "dijordan_nil3"),
    "dijordan_cur1": alg(["p", "q"], {(0, 0): {0: 2}, (0, 1): {1: 2}}, "dijordan_cur1"),
}

LIE_DIALG = ["leibniz_2dim", "leibniz_nonlie", "lie_solv2", "lie_sl2"]

DIALGEBRAS = {
    "dias_zero_1": Dialgebra(["a"], {}, {}, "dias_zero_1"),
    "dias_zero_2": Dialgebra(["a", "b"], {}, {}, "dias_zero_2"),
    "dias_idem_1": Dialgebra(["a"], {(0, 0): {0: 1}}, {(0, 0): {0: 1}}, "dias_idem_1"),
    "dias_cur1": Dialgebra(["p", "q"], {(0, 0): {0: 1}, (0, 1): {1: 1}}, {(0, 0): {0: 1}, (1, 0): {1: 1}},
                            "dias_cur1"),
    "dias_nonassoc_2": Dialgebra(["a", "b"], {(0, 0): {1: 1}, (1, 0): {0: 1}}, {(0, 0): {1: 1}, (1, 0): {0: 1}},
                                  "dias_nonassoc_2"),
    "dias_upper2": Dialgebra(["E11", "E12", "E22"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}},
                              {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}, "dias_upper2"),
    "dias_zero_fail": Dialgebra(["a"], {(0, 0): {0: 1}}, {}, "dias_zero_fail"),
}


def tags_for(obj):
    if isinstance(obj, Dialgebra):
        if not check_zero_identities(obj):
            return ["zero-identities-fail"]
        tags = ["diassociative"] if is_diassociative(obj) else []
        if is_di_variety(obj, variety_axioms("lie")):
            tags.append("lie-dialgebra")
        return tags
    checks = [("associative", is_associative), ("commutative", is_commutative), ("lie", is_lie),
              ("leibniz", is_leibniz), ("jordan", is_jordan), ("dijordan", is_di_jordan)]
    tags = [t for t, fn in checks if fn(obj)]
    tags.append("nilpotent" if series(obj).verdict else "non-nilpotent")
    return tags


def main():
    OUT.mkdir(exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    objs = dict(ALGEBRAS)
    objs.update(DIALGEBRAS)
    for base in LIE_DIALG:
        objs[f"lie_dialg_{base}"] = leibniz_dialgebra(ALGEBRAS[base])
    objs["dias_cur_dual"] = zero_functor(current(ALGEBRAS["dual_numbers"]), 1)
    specs = {name: spec_from_object(obj, name, tags_for(obj)) for name, obj in objs.items()}
    specs["virasoro"] = validate({"kind": "conformal", "name": "virasoro", "generators": ["v"],
                                  "table": {"v,v": [["T + 2*L", "v"]]}})
    ident = lambda name, degree, terms: validate(
        {"kind": "identity", "name": name, "degree": degree,
         "terms": [{"coeff": c, "tree": t} for c, t in terms]})
    specs["identity_assoc"] = ident("identity_assoc", 3, [("1", "((x1 x2) x3)"), ("-1", "(x1 (x2 x3))")])
    specs["identity_comm"] = ident("identity_comm", 2, [("1", "(x1 x2)"), ("-1", "(x2 x1)")])
    specs["identity_symmetric"] = ident("identity_symmetric", 2, [("1", "(x1 x2)"), ("1", "(x2 x1)")])
    specs["identity_jacobi"] = ident("identity_jacobi", 3,
                                     [("1", "((x1 x2) x3)"), ("1", "((x2 x3) x1)"), ("1", "((x3 x1) x2)")])
    specs["module_leibniz_2dim_trivial"] = validate(
        {"kind": "module-action", "name": "module_leibniz_2dim_trivial", "algebra": "leibniz_2dim", "dim": 1,
         "action": {"a": [["0"]], "b": [["0"]]}})
    for name, spec in specs.items():
        (OUT / f"{name}.json").write_text(spec.dumps(), encoding="utf-8")
    print(f"wrote {len(specs)} files to {OUT}")


if __name__ == "__main__":
    main()
