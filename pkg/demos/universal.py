"""Print the universal presentation generated for the two-point example."""

from qsymmod.catalog import two_point_spec
from qsymmod.coaction import universal_presentation
from qsymmod.formats import presentation_text

spec = two_point_spec()[0]
pres, _ = universal_presentation(spec)
print(presentation_text(pres))
