#!/usr/bin/env python3
"""Export the Riemenschneider-numbered Bach chorales bundled with music21 as
Standard MIDI Files, one file per chorale number.

    python3 scripts/make_bach_corpus.py data/bach_chorales [--first 1 --last 370]

Only the four vocal parts are kept; some chorales ship with obbligato
instrument parts (trumpets, horns, timpani) that are not part of the
four-part setting. Ties are merged before export so that a tied note becomes a
single MIDI note.
"""
import argparse
import pathlib

from music21 import corpus, stream

VOICES = ("soprano", "alto", "tenor", "bass")


def vocal_parts(score):
    """The Soprano, Alto, Tenor and Bass parts, or all parts if any is missing."""
    chosen = []
    for voice in VOICES:
        for part in score.parts:
            name = (part.partName or part.id or "").strip().lower()
            if name.split() and name.split()[0] == voice:
                chosen.append(part)
                break
    if len(chosen) != len(VOICES):
        return score
    return stream.Score(chosen)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--first", type=int, default=1)
    ap.add_argument("--last", type=int, default=370)
    args = ap.parse_args()

    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    names = corpus.chorales.Iterator(args.first, args.last,
                                     numberingSystem="riemenschneider",
                                     returnType="filename")
    for number, name in zip(range(args.first, args.last + 1), names):
        score = vocal_parts(corpus.parse(name)).stripTies()
        stem = name.split("/")[-1].replace(".", "_")
        path = out / f"r{number:03d}_{stem}.mid"
        score.write("midi", fp=str(path))
        print(path)


if __name__ == "__main__":
    main()
