"""Download the Project Gutenberg text of "Pride and Prejudice" for benchmarking.

    python scripts/fetch_corpus.py pride.txt
    hamprof bench --sizes 10,20,30,40,50,60,70,80,90,100 pride.txt > sweep.csv
"""

import sys
import urllib.request

URL = "https://www.gutenberg.org/cache/epub/1342/pg1342.txt"


def main(dest="pride.txt"):
    with urllib.request.urlopen(URL, timeout=60) as resp, open(dest, "wb") as out:
        out.write(resp.read())
    print(f"wrote {dest}")


if __name__ == "__main__":
    main(*sys.argv[1:])
