"""
Six correlation values from a length-24 sequence
================================================

Build GF(5^2), read off the m-sequence s_t = Tr(alpha^t), decimate it by
d = 3 and sum w^(s_{t+tau} - s_{dt}) over a full period for every shift.
"""

from collections import Counter

from corrspec import build_field, m_sequence, recognize_quadratic, validate_params
from corrspec.seqgen import decimated_sequence, direct_sweep

params = validate_params(5, 1, 1)
field = build_field(params.p, params.n)
print(field, "generator", field.generator, "period", params.period)

# the sequence and its decimation; the decimated copy has a shorter period
s = m_sequence(params, field)
print("s   =", "".join(map(str, s)))
print("s_d =", "".join(map(str, decimated_sequence(s, params.d))))

# each correlation is an exact element of Z[w]; all of them turn out to be
# real numbers of the form u + v*sqrt(5)
values = [recognize_quadratic(v) for v in direct_sweep(params, field)]
for value, count in sorted(Counter(values).items(), key=lambda kv: float(kv[0])):
    print(f"{str(value):>18}  {float(value):9.4f}  x{count}")
