"""Verify the segments example against both certificates and print the reports."""

from qsymmod.catalog import SegmentsParams, segments_spec, segments_certificate, segments_filtration
from qsymmod.coaction import verify_all
from qsymmod.filtration import validate
from qsymmod.rewrite import RewriteConfig

params = SegmentsParams(d=2, N=2)
spec = segments_filtration(params)
print(validate(spec).summary())
for kind in ("hyper", "quotient", "permutation"):
    cert = segments_certificate(params, kind, RewriteConfig(6))
    print(f"\n== certificate: {kind}")
    print(verify_all(spec, cert).summary())
