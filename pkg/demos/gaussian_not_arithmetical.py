"""A Gaussian amalgamation that is not arithmetical, plus a corpus search."""

from amalgam.ideals import element_times_ideal
from amalgam.predicates import is_arithmetical, is_gaussian
from amalgam.verifier import Builder, CorpusBounds, generate_corpus, search

b = Builder()
inst = b.instance(("amalgam", ("canon", ("polyx", 2, 4), (4,)), (2,)))
fX = inst.f.map[inst.R.generator]
print(inst.label)
print("  Gaussian:", is_gaussian(inst.A), " arithmetical:", is_arithmetical(inst.A))
print("  |J| =", inst.J.size, " |XJ| =", element_times_ideal(fX, inst.J).size)

corpus = generate_corpus(CorpusBounds(zmod_max=16, polyx_max=16, extension_fields=((2, 2),),
                                      max_amalgam_size=64, trivext_max=64), b)
hits = search("gaussian,!arithmetical", corpus)
print(f"\n{len(hits)} of {len(corpus)} small instances are Gaussian but not arithmetical:")
for h in hits[:10]:
    print(f"  |A| = {h.A.size:3d}  {h.digest()}")
