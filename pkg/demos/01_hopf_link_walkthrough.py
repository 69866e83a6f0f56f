"""Whittling the Hopf link braid ft_2^2, one step at a time.

Run with ``python3 demos/01_hopf_link_walkthrough.py``.
"""

from ftwhittle import (
    differential_components,
    enumerate_enhanced,
    gradings,
    make_torus_braid,
    resolve,
    whittle,
)

b = make_torus_braid(2, 2)
print("braid letters:", b.letters)

# %% every enhanced state, with its loops and bigrading
for e in enumerate_enhanced(b):
    loops = [(lp.left_crossing, lp.right_crossing) for lp in resolve(e.state).loops]
    print(f"{str(e):10s} h,q = {gradings(e)}  loops {loops}")

# %% the components leaving (10, ø): one unit, one dotted
src = next(e for e in enumerate_enhanced(b) if e.bars == "10")
for c in differential_components(src):
    print(f"  {src} -> {c.target} at crossing {c.crossing}: {c.coefficient}")

# %% the unit component is the single distinguished isomorphism
wc = whittle(b)
for iso in wc.cancelled:
    print("cancel", iso.kind, iso.source, "->", iso.target)
for h, states in sorted(wc.survivors.items()):
    print(f"h={h}:", ", ".join(str(e) for e in states))
