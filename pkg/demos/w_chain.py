"""Derive the square-root chain v(n) = w^r(n) from the generic coaction relations."""

from qsymmod.catalog import derive_w_chain

out = derive_w_chain(d=2, window=2)
print(f"rules after completion: {out['rules']} (complete={out['complete']})")
for link in out["links"]:
    status = "proven" if link["certificate"].proven else "open"
    print(f"{status:7} {link['link']:10} {link['identity']}")
print("all proven:", out["all_proven"])
