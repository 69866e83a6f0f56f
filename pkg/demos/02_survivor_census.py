"""Count survivors of ft_n^k against the bound, and classify their words."""

from collections import Counter

from ftwhittle import classify_survivor, count_bound, make_torus_braid, resolve, whittle

for n, k in [(2, 6), (3, 4), (4, 3)]:
    wc = whittle(make_torus_braid(n, k))
    print(f"ft_{n}^{k}: {len(wc.cancelled)} pairs cancelled, {len(wc.all_survivors())} survivors")
    for h in sorted(wc.survivors):
        print(f"   h={h:2d}  states {len(wc.survivor_states(h)):3d}  bound {count_bound(n, k, h)}")
    forms = Counter()
    for e in wc.all_survivors():
        form = classify_survivor(resolve(e.state).word)
        forms[form.variant if form else "unclassified"] += 1
    print("   forms:", dict(forms))
