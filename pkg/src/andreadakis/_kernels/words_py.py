"""Pure-Python free-group substitution."""


def substitute(syllables, forward, backward):
    out: list[list[int]] = []
    r = len(forward)
    for g, e in syllables:
        if not 1 <= g <= r:
            raise IndexError(f"generator x{g} outside the substitution")
        src = forward[g - 1] if e > 0 else backward[g - 1]
        for _ in range(abs(e)):
            for h, f in src:
                if out and out[-1][0] == h:
                    f += out[-1][1]
                    if f:
                        out[-1][1] = f
                    else:
                        out.pop()
                else:
                    out.append([h, f])
    return tuple((g, e) for g, e in out)


def apply_chain(images, steps):
    images = list(images)
    for forward, backward in steps:
        images = [substitute(w, forward, backward) for w in images]
    return images
