"""CSV/JSON serialization. Every CSV starts with a `# schema=rkhs-v1`
line, `# key=value` metadata lines, then a column header row. Complex
values are stored as separate re_/im_ columns."""

import csv
import io
import json

import numpy as np

from .kernels import KernelSpec
from .regression import CoefficientExpansion, LabeledDataset

SCHEMA = "rkhs-v1"


def write_csv(path, columns, metadata=None):
    """columns: ordered mapping name -> 1-D array; metadata: str -> str."""
    names = list(columns)
    arrays = [np.asarray(columns[name]) for name in names]
    length = arrays[0].size if arrays else 0
    if any(a.size != length for a in arrays):
        raise ValueError("all columns must have equal length")
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA}\n")
    for key, value in (metadata or {}).items():
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for i in range(length):
        writer.writerow([repr(float(a[i])) for a in arrays])
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def read_csv(path):
    """Returns (columns dict of float arrays, metadata dict of strings)."""
    metadata = {}
    rows = []
    header = None
    with open(path, newline="") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if not line:
                continue
            parsed = next(csv.reader([line]))
            if header is None:
                header = parsed
            else:
                rows.append([float(v) for v in parsed])
    if metadata.get("schema") != SCHEMA:
        raise ValueError(f"missing or unexpected schema marker in {path}")
    if header is None:
        raise ValueError(f"no column header found in {path}")
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}, metadata


def dataset_to_csv(path, data, extra_metadata=None):
    meta = {"lambda": repr(float(data.lam))}
    meta.update(extra_metadata or {})
    write_csv(
        path,
        {
            "re_z": data.inputs.real,
            "im_z": data.inputs.imag,
            "re_w": data.outputs.real,
            "im_w": data.outputs.imag,
        },
        meta,
    )


def dataset_from_csv(path, lam=None):
    cols, meta = read_csv(path)
    if lam is None:
        lam = float(meta["lambda"])
    return LabeledDataset(
        inputs=cols["re_z"] + 1j * cols["im_z"],
        outputs=cols["re_w"] + 1j * cols["im_w"],
        lam=lam,
    )


def expansion_to_csv(path, expansion, extra_metadata=None):
    meta = {"kernel": json.dumps(expansion.kernel.to_json())}
    meta.update(extra_metadata or {})
    write_csv(
        path,
        {
            "re_z": expansion.centers.real,
            "im_z": expansion.centers.imag,
            "re_alpha": expansion.coefficients.real,
            "im_alpha": expansion.coefficients.imag,
        },
        meta,
    )


def expansion_from_csv(path):
    cols, meta = read_csv(path)
    kernel = KernelSpec.from_json(json.loads(meta["kernel"]))
    return CoefficientExpansion(
        centers=cols["re_z"] + 1j * cols["im_z"],
        coefficients=cols["re_alpha"] + 1j * cols["im_alpha"],
        kernel=kernel,
    )


def dataset_to_json(data, kernel=None):
    obj = {
        "lambda": float(data.lam),
        "re_z": data.inputs.real.tolist(),
        "im_z": data.inputs.imag.tolist(),
        "re_w": data.outputs.real.tolist(),
        "im_w": data.outputs.imag.tolist(),
    }
    if kernel is not None:
        obj["kernel"] = kernel.to_json()
    return obj


def dataset_from_json(obj):
    return LabeledDataset(
        inputs=np.array(obj["re_z"]) + 1j * np.array(obj["im_z"]),
        outputs=np.array(obj["re_w"]) + 1j * np.array(obj["im_w"]),
        lam=obj["lambda"],
    )


def expansion_to_json(expansion):
    return {
        "kernel": expansion.kernel.to_json(),
        "re_z": expansion.centers.real.tolist(),
        "im_z": expansion.centers.imag.tolist(),
        "re_alpha": expansion.coefficients.real.tolist(),
        "im_alpha": expansion.coefficients.imag.tolist(),
    }


def expansion_from_json(obj):
    return CoefficientExpansion(
        centers=np.array(obj["re_z"]) + 1j * np.array(obj["im_z"]),
        coefficients=np.array(obj["re_alpha"]) + 1j * np.array(obj["im_alpha"]),
        kernel=KernelSpec.from_json(obj["kernel"]),
    )


def field_to_csv(path, field, extra_columns=None, extra_metadata=None):
    meta = {"t": repr(float(field.t))}
    meta.update(extra_metadata or {})
    cols = {
        "x": field.x_grid,
        "re_psi": field.values.real,
        "im_psi": field.values.imag,
        "abs_psi": np.abs(field.values),
    }
    cols.update(extra_columns or {})
    write_csv(path, cols, meta)
