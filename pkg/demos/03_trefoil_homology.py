"""Integer Khovanov homology of the trefoil, closed from ft_2^3."""

from ftwhittle import close_and_build, euler_state_sum, homology, make_torus_braid
from ftwhittle.homology import laurent_str

b = make_torus_braid(2, 3)
cx = close_and_build(b)
print("chain dimensions per h:", cx.dims())

hs = homology(cx)
for row in hs.rows():
    tors = " ".join(f"Z/{t}" for t in row["torsion"])
    print(f"h={row['h']} q={row['q']:2d} rank {row['rank']} {tors}")

print("euler from homology:", laurent_str(hs.euler()))
print("bracket state sum:  ", laurent_str(euler_state_sum(b)))
