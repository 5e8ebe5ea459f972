"""Square-free words from the r = 6k + 2 substitution and the nil table they define.

Run with: python3 demos/sapir_words.py
"""
import time

from finsemi.green import green_classes
from finsemi.sapir import factors_upto, format_word, gamma_power, is_square_free, vk_table

for m in range(1, 5):
    w = gamma_power(1, m)
    print(f"gamma^{m}(a_1_1): length {len(w)}, square-free {is_square_free(w)}")
print("first 16 letters:", format_word(1, gamma_power(1, 2)[:16]))

for L in (2, 4, 8):
    start = time.perf_counter()
    fs = factors_upto(1, L)
    t = vk_table(fs)
    j = green_classes(t, "J").class_count
    print(f"factors up to length {L}: {len(fs)} words, table n={t.n}, J-classes={j}, "
          f"{time.perf_counter() - start:.2f}s")
