"""
Real forms, ovals, and species
==============================

Each anticonformal involution of a surface is a real form of the curve;
its fixed curves ("ovals") are counted and signed into a species.  The
multiset of species over all conjugacy classes of involutions is the
symmetry type of the family.
"""

from fourg import build_extensions, species_set, symmetry_classes_with_ovals

# Each extension class determines the symmetry type of the surfaces on its
# arc of the family.
for g in (4, 5):
    print(f"genus {g}:")
    for e in build_extensions(g, "a") + build_extensions(g, "b"):
        values = [sp.value for sp in species_set(e)]
        print(f"  {e.label}: species {values}")

# The species come from conjugacy classes of symmetries; the oval count of
# each class is a centralizer-index computation.
g = 5
(e,) = [x for x in build_extensions(g, "a") if x.label == "a1"]
print(f"genus {g}, class {e.label}:")
for cls in symmetry_classes_with_ovals(e):
    print(f"  symmetry {cls.representative.name}: {cls.ovals} oval(s),"
          f" class of {cls.size} involution(s)")

# A species of 0 is a fixed-point-free symmetry; negative species are
# non-separating real forms.  Harnack's bound caps every count at g + 1,
# and the engine validates it on construction:
from fourg import Species

try:
    Species(genus=5, ovals=9, separating=True)
except Exception as err:
    print("rejected:", err)
