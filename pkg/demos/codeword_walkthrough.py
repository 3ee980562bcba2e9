"""Trace a few inputs through the async codeword pipeline and show the walks."""
from rendezvous import strings as s


def show_walk(z):
    g = s.graph_of(z)
    top = max(g)
    rows = []
    for level in range(top, min(g) - 1, -1):
        rows.append("".join("*" if h == level else " " for h in g))
    return "\n".join(f"  {r}" for r in rows)


for x in ["1", "01", "110"]:
    b = s.balance(x)
    c, cat = s.to_catalan_shift(b)
    u = s.unique_encode(b)
    rec = s.encode_async_record(x)
    print(f"x = {x}")
    print(f"  balanced      {b}")
    print(f"  Catalan shift c={c}: {cat}")
    print(f"  with shift tag {u}")
    print(f"  codeword      {rec.output}  (1010 inserted at {rec.insertion_index})")
    print(f"  maxima={s.maximality_count(rec.output)} minima={s.minimality_count(rec.output)}")
    print(show_walk(rec.output))
    print()

# Two distinct codewords of equal length see both mixed pairs at every rotation.
a, b = s.encode_async("01"), s.encode_async("10")
print(a, b, "black_diamond1:", s.black_diamond1(a, b), "black_diamond0:", s.black_diamond0(a, b))
