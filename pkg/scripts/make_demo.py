"""Build a small demo workspace for the curation service.

Writes a hand-sized corpus plus every pipeline artifact into --dest
(default ./demo) and prints the matching `knowcert serve` invocation.
The corpus is shaped so the queue shows each finding type and one
contradiction rests on a single excitatory claim: marking that claim
as an extraction error live-reclassifies the finding into diversity.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from knowcert.cli import main as knowcert

PREDICATIONS = """\
PREDICATION_ID\tSENTENCE_ID\tPMID\tPREDICATE\tSUBJECT_CUI\tSUBJECT_NAME\tSUBJECT_SEMTYPES\tOBJECT_CUI\tOBJECT_NAME\tOBJECT_SEMTYPES
P001\tS101\t40000001\tCAUSES\tC0000101\tAlphaxin\tphsu\tC0000201\tGranulofibrosis\tdsyn
P002\tS102\t40000002\tTREATS\tC0000101\tAlphaxin\tphsu\tC0000201\tGranulofibrosis\tdsyn
P003\tS103\t40000003\tTREATS\tC0000101\tAlphaxin\tphsu\tC0000201\tGranulofibrosis\tdsyn
P004\tS104\t40000004\tPREVENTS\tC0000101\tAlphaxin\tphsu\tC0000201\tGranulofibrosis\tdsyn
P005\tS105\t40000005\tTREATS\tC0000102\tBetazol\tphsu\tC0000201\tGranulofibrosis\tdsyn
P006\tS106\t40000006\tINHIBITS\tC0000102\tBetazol\tphsu\tC0000201\tGranulofibrosis\tdsyn
P007\tS107\t40000007\tPREVENTS\tC0000103\tGammarol\tphsu\tC0000202\tCardiomyalgia\tdsyn
P008\tS108\t40000008\tNEG_PREVENTS\tC0000103\tGammarol\tphsu\tC0000202\tCardiomyalgia\tdsyn
P009\tS109\t40000009\tTREATS\tC0000103\tGammarol\tphsu\tC0000202\tCardiomyalgia\tdsyn
"""

SENTENCES = """\
SENTENCE_ID\tPMID\tLOCATION\tORDINAL\tTEXT
S101\t40000001\tab\t1\tAlphaxin caused granulofibrosis in two treatment arms.
S102\t40000002\tab\t2\tEvidence that alphaxin treats granulofibrosis remains conflicting across cohorts.
S103\t40000003\tab\t1\tAlphaxin treated granulofibrosis in the pooled analysis.
S104\t40000004\tab\t1\tAlphaxin prevented granulofibrosis relapse over five years.
S105\t40000005\tab\t1\tBetazol treats early granulofibrosis.
S106\t40000006\tab\t1\tBetazol inhibits granulofibrosis progression.
S107\t40000007\tab\t1\tGammarol prevented cardiomyalgia in the intervention group.
S108\t40000008\tab\t2\tThe claim that gammarol prevents cardiomyalgia is controversial; our trial found no effect.
S109\t40000009\tab\t1\tGammarol may treat refractory cardiomyalgia.
"""

ARTICLES = """\
PMID\tPUB_DATE\tPUB_TYPES\tMESH_HEADINGS
40000001\t2009 Mar\tRandomized Controlled Trial\t
40000002\t2011 Jun\tMeta-Analysis\t
40000003\t2013 Jan\tMeta-Analysis\tSystematic Reviews as Topic
40000004\t2015 Sep\tRandomized Controlled Trial\t
40000005\t2010 Feb\tRandomized Controlled Trial\t
40000006\t2012 Nov\tRandomized Controlled Trial|Multicenter Study\t
40000007\t2014 Apr\tMeta-Analysis\t
40000008\t2016 Aug\tRandomized Controlled Trial\t
40000009\t2017 May\tClinical Trial\t
"""


def run(argv: list[str]) -> None:
    rc = knowcert(argv)
    if rc != 0:
        raise SystemExit(f"knowcert {argv[0]} failed with exit code {rc}")


def main(args: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dest", default="demo")
    opts = parser.parse_args(args)

    dest = Path(opts.dest)
    dest.mkdir(parents=True, exist_ok=True)
    (dest / "predications.tsv").write_text(PREDICATIONS, encoding="utf-8")
    (dest / "sentences.tsv").write_text(SENTENCES, encoding="utf-8")
    (dest / "articles.tsv").write_text(ARTICLES, encoding="utf-8")

    raw = dest / "raw.bin"
    corpus = dest / "corpus.bin"
    tags = dest / "tags.bin"
    units = dest / "units.bin"
    findings = dest / "findings.jsonl"
    log = dest / "decisions.jsonl"

    run([
        "ingest",
        "--predications", str(dest / "predications.tsv"),
        "--sentences", str(dest / "sentences.tsv"),
        "--articles", str(dest / "articles.tsv"),
        "--strict", "--out", str(raw),
    ])
    run(["filter", "--corpus", str(raw), "--out", str(corpus)])
    run(["tag", "--corpus", str(corpus), "--out", str(tags)])
    run([
        "units",
        "--corpus", str(corpus), "--tags", str(tags),
        "--exclude-hedged", "--corpus-version", "demo",
        "--out", str(units),
    ])
    run([
        "detect",
        "--units", str(units), "--tags", str(tags), "--out", str(findings),
    ])
    log.touch()

    print()
    print("demo workspace ready. start the service with:")
    print(
        "  knowcert serve"
        f" --findings {findings} --units {units}"
        f" --corpus {corpus} --log {log}"
    )
    print("add --static frontend/dist to also serve the built UI.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
