#!/usr/bin/env python3
"""Regenerates resources/wordlists from upstream word-list packages.

Sources (download the wheels/sdists with `pip download --no-deps`):
  pyspellchecker 0.9.1 (MIT)   -> english.txt, german.txt
  pycountry (LGPL-2.1 data)    -> countries.txt (English + German names)
  stop-words 2018.7.23 (BSD)   -> stopwords_en.txt, stopwords_de.txt

Usage: gen_wordlists.py <unpacked-pyspellchecker> <unpacked-pycountry> <unpacked-stop-words> <out-dir>
"""
import gettext
import gzip
import json
import os
import sys


def write(path, words):
    with open(path, "w", encoding="utf-8") as f:
        for w in sorted(set(words)):
            f.write(w + "\n")


def main():
    psc, pyc, sw, out = sys.argv[1:5]
    res = os.path.join(psc, "spellchecker", "resources")
    for lang, name in (("en", "english"), ("de", "german")):
        d = json.load(gzip.open(os.path.join(res, lang + ".json.gz")))
        words = [w.lower() for w in d if w.isalpha()]
        write(os.path.join(out, name + ".txt"), words)

    data = json.load(open(os.path.join(pyc, "pycountry", "databases", "iso3166-1.json")))
    de = gettext.translation("iso3166-1", os.path.join(pyc, "pycountry", "locales"), ["de"])
    names = []
    for c in data["3166-1"]:
        for key in ("name", "common_name", "official_name"):
            if key in c:
                names.append(c[key].lower())
                names.append(de.gettext(c[key]).lower())
    write(os.path.join(out, "countries.txt"), names)

    base = os.path.join(sw, "stop_words", "stop-words")
    for lang, name in (("english", "en"), ("german", "de")):
        words = [l.strip().lower() for l in open(os.path.join(base, lang + ".txt"), encoding="utf-8")]
        write(os.path.join(out, "stopwords_%s.txt" % name), [w for w in words if w])


if __name__ == "__main__":
    main()
