"""Download the two experiment datasets into data/.

    python scripts/fetch_data.py            # both
    python scripts/fetch_data.py zoo
    python scripts/fetch_data.py newsgroups

zoo.data is the UCI file as distributed. The tiny 20-newsgroups data ships
as 20news_w100.mat (100 words x 16242 postings, 4 groups); it is converted
to data/20news_w100.txt plus .labels/.words, the text form read by
``hyperlap run --kind newsgroups``. The library itself never touches the
network.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

from hyperlap.data import convert_newsgroups_mat

DATA = Path(__file__).resolve().parent.parent / "data"
ZOO_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/zoo/zoo.data"
NEWS_URL = "https://cs.nyu.edu/~roweis/data/20news_w100.mat"


def fetch(url, target):
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        target.write_bytes(resp.read())
    return target


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("which", nargs="*", choices=("zoo", "newsgroups"),
                        default=["zoo", "newsgroups"])
    args = parser.parse_args(argv)
    DATA.mkdir(exist_ok=True)
    if "zoo" in args.which:
        fetch(ZOO_URL, DATA / "zoo.data")
    if "newsgroups" in args.which:
        mat = fetch(NEWS_URL, DATA / "20news_w100.mat")
        for path in convert_newsgroups_mat(mat, DATA / "20news_w100.txt"):
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
