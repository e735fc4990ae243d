"""Regenerates breast_cancer_subset.csv: 40 malignant + 60 benign rows of the
Wisconsin diagnostic data shipped with scikit-learn, original row order."""
import sys

import numpy as np
from sklearn.datasets import load_breast_cancer

d = load_breast_cancer()
rng = np.random.default_rng(20231015)
mal = np.where(d.target == 0)[0]
ben = np.where(d.target == 1)[0]
idx = np.sort(np.concatenate([rng.choice(mal, 40, replace=False), rng.choice(ben, 60, replace=False)]))
names = [n.replace(" ", "_") for n in d.feature_names]
out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
out.write("diagnosis," + ",".join(names) + "\n")
for i in idx:
    out.write(("M" if d.target[i] == 0 else "B") + "," + ",".join("%.6g" % v for v in d.data[i]) + "\n")
