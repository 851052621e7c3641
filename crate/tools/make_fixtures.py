"""Regenerates the test fixtures under fixtures/ from the NCI sample shipped
with RDKit. RDKit is only needed here, never by the crates.

    python3 tools/make_fixtures.py
"""

import csv
import random
from pathlib import Path

from rdkit import Chem, RDConfig, RDLogger
from rdkit.Chem import Crippen, Descriptors

RDLogger.DisableLog("rdApp.*")

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "fixtures"
SOURCE = Path(RDConfig.RDDataDir) / "NCI" / "first_5K.smi"
ALLOWED = {"C", "N", "O", "S", "P", "F", "Cl", "Br", "I"}

# A few well-known odorants so the corpus is not purely NCI.
ODORANTS = [
    "CCO", "CC(=O)OCC", "CC(C)CCOC(C)=O", "O=Cc1ccccc1", "COc1cc(C=O)ccc1O",
    "CC(=O)c1ccccc1", "CC1=CCC(CC1)C(C)=C", "CC(C)=CCCC(C)=CCO", "CC(C)=CCCC(C)=CC=O",
    "CCCCCCCC=O", "CCCCCC(C)=O", "O=C1CCCCCCCCCCCCCC1", "CC1CCC(C(C)C)C(O)C1",
    "CC(=O)OCc1ccccc1", "COC(=O)c1ccccc1O", "C=CCc1ccc(O)c(OC)c1", "O=C1C=CC(=O)C=C1",
    "CCCCCCCCCO", "CC(C)C=O", "CCC(=O)OCC", "CSC", "CCSCC", "c1ccc2[nH]ccc2c1",
    "Cc1ccc(C(C)C)cc1", "CC(C)c1ccc(C)cc1O", "O=C(OCc1ccccc1)c1ccccc1", "CCCCC(=O)OCC",
    "CC1=C(C)C(=O)OC1", "CCCCCCC(=O)OC", "C1CCOC1", "c1ccoc1", "Cc1ccco1", "O=Cc1ccco1",
    "CC(=O)C(C)=O", "CCCC(=O)O", "CC=CC=O", "CC(C)CC(=O)O", "COc1ccccc1", "Oc1ccccc1",
    "CC12CCC(CC1)C(C)(C)O2", "CC1(C)C2CCC1(C)C(=O)C2", "CC(C)C1CCC(C)CC1=O",
]


def clean(smi):
    mol = Chem.MolFromSmiles(smi)
    if mol is None:
        return None
    if len(Chem.GetMolFrags(mol)) != 1:
        return None
    if not 3 <= mol.GetNumHeavyAtoms() <= 40:
        return None
    if any(a.GetSymbol() not in ALLOWED for a in mol.GetAtoms()):
        return None
    if any(abs(a.GetFormalCharge()) > 1 for a in mol.GetAtoms()):
        return None
    if abs(Chem.GetFormalCharge(mol)) > 0:
        return None
    # Skip hypervalent/odd species the plain valence model would flag.
    if any(a.GetNumRadicalElectrons() for a in mol.GetAtoms()):
        return None
    return Chem.MolToSmiles(mol, isomericSmiles=False, kekuleSmiles=False)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n")


def write_reference(path, smiles):
    """Descriptor values from an independent implementation."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(["smiles", "logp", "mw", "heavy_atoms", "rings"])
        for smi in smiles:
            m = Chem.MolFromSmiles(smi)
            w.writerow([
                smi,
                f"{Crippen.MolLogP(m):.6f}",
                f"{Descriptors.MolWt(m):.6f}",
                m.GetNumHeavyAtoms(),
                len(Chem.GetSSSR(m)),
            ])


# Substructure -> odor label, for the synthetic labelled dataset only.
LABEL_RULES = [
    ("fruity", "[CX3](=O)[OX2][#6]"),
    ("aldehydic", "[CX3H1](=O)[#6]"),
    ("phenolic", "c[OX2H]"),
    ("sulfurous", "[#16]"),
    ("woody", "[R2]"),
    ("green", "[CX3]=[CX3]"),
    ("sweet", "c1ccccc1"),
    ("fatty", "[CH2][CH2][CH2][CH2]"),
]
LABELS = sorted(name for name, _ in LABEL_RULES) + ["odorless"]


def synthetic_labels(smi):
    m = Chem.MolFromSmiles(smi)
    mw = Descriptors.MolWt(m)
    tpsa = Descriptors.TPSA(m)
    if mw > 300 or tpsa > 70 or m.GetNumHeavyAtoms() > 21:
        return ["odorless"]
    found = [name for name, patt in LABEL_RULES if m.HasSubstructMatch(Chem.MolFromSmarts(patt))]
    return sorted(found) or ["odorless"]


def write_dataset(path, smiles):
    """Same shape as the curated file: SMILES, ';'-joined descriptors, one-hot columns."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["nonStereoSMILES", "descriptors"] + LABELS)
        for smi in smiles:
            labels = synthetic_labels(smi)
            w.writerow([smi, ";".join(labels)] + [int(l in labels) for l in LABELS])


def main():
    OUT.mkdir(exist_ok=True)
    seen = set()
    pool = []
    for smi in ODORANTS:
        c = clean(smi)
        if c and c not in seen:
            seen.add(c)
            pool.append(c)
    for line in SOURCE.read_text().splitlines():
        c = clean(line.split()[0])
        if c and c not in seen:
            seen.add(c)
            pool.append(c)
    corpus = pool[:1000]
    rest = pool[1000:]
    write_lines(OUT / "corpus_1000.smi", corpus)
    write_lines(OUT / "bench_500.smi", corpus[:500])
    write_reference(OUT / "reference_descriptors.tsv", corpus)

    rng = random.Random(7)
    dataset = corpus[:600]
    write_dataset(OUT / "dataset_synthetic.csv", dataset)

    # Screen input: mostly unseen molecules, a few training molecules, an
    # alternative spelling of one, duplicates and unparsable lines.
    screen = rng.sample(rest, 88)
    screen += dataset[:4]
    screen += ["OCC", "C(C)O", screen[0], screen[1]]
    screen += ["not_a_smiles", "C1CC", "CC(C)(C)(C)(C)C", "c1cccc1"]
    rng.shuffle(screen)
    write_lines(OUT / "screen_100.smi", screen)
    print(len(pool), "candidates,", len(corpus), "in corpus")


if __name__ == "__main__":
    main()
