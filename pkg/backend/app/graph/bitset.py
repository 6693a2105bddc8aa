"""Row-bitset helpers; vertex ``v`` is bit ``1 << v``."""

from typing import Iterable, Iterator


def lsb_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def is_clique_mask(rows: list[int] | tuple[int, ...], mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if rest & ~rows[v]:
            return False
    return True
