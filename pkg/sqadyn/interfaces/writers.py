""" Output bundles and their atomic, self-describing file writers.

    CSV tables start with a '#' comment preamble (units, seed, code version
    and the fully resolved configuration) followed by a header row.
    Structured documents are JSON. Every file is written to a temporary file
    in the target directory and renamed into place; nothing is written until
    the whole bundle has been rendered.
"""
import os
import json
import logging
import tempfile

from dataclasses import dataclass, field

from sqadyn.interfaces.json import SqadynEncoder
from sqadyn.package_info import __version__

__all__ = ["OutputBundle", "FORMATS", "UNITS", "render_csv",
           "render_structured", "write_atomic", "write_bundle"]

log = logging.getLogger(__name__)

FORMATS = ('csv', 'structured')

UNITS = "energies and frequencies in units of the mean qubit frequency (hbar = 1); times in 1/mean frequency"

@dataclass
class OutputBundle:
    """ Named tables and documents of one run.

        Args:
            name: (str)
                Prefix of every output file.
            tables: (dict)
                Stem to pandas.DataFrame, written as CSV.
            documents: (dict)
                Stem to JSON-serializable object, written as structured output.
            provenance: (dict)
                Resolved configuration and seed, echoed into every file.
            assumptions: (list of str)
    """
    name: str
    tables: dict = field(default_factory=dict)
    documents: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)

    def add_table(self, stem, frame):
        self.tables[stem] = frame

    def add_document(self, stem, obj):
        self.documents[stem] = obj

    def merge(self, other):
        self.tables.update(other.tables)
        self.documents.update(other.documents)
        self.assumptions.extend(a for a in other.assumptions if a not in self.assumptions)

def _preamble(bundle):
    lines = [f"sqadyn {__version__}",
             f"units: {UNITS}",
             f"seed: {bundle.provenance.get('seed')}"]
    lines.extend(f"assumption: {a}" for a in bundle.assumptions)
    config = json.dumps(bundle.provenance.get('config'), cls=SqadynEncoder, sort_keys=True)
    lines.append(f"config: {config}")
    return "".join(f"# {line}\n" for line in lines)

def render_csv(bundle, frame):
    return _preamble(bundle) + frame.to_csv(index=False, float_format='%.17g', lineterminator='\n')

def render_structured(bundle, obj):
    doc = {"sqadyn_version": __version__,
           "units": UNITS,
           "seed": bundle.provenance.get('seed'),
           "config": bundle.provenance.get('config'),
           "assumptions": bundle.assumptions,
           "data": obj}
    return json.dumps(doc, cls=SqadynEncoder, indent=2, sort_keys=True) + "\n"

def write_atomic(path, text):
    """ Write through a temporary sibling file and os.replace """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sqadyn-", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as fp:
            fp.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path

def write_bundle(bundle, directory, formats=FORMATS):
    """ Render every table and document, then write them atomically.

        Args:
            bundle: (OutputBundle)
            directory: (str)
                Created when missing.
            formats: (iterable, default=('csv','structured'))
                Tables go to CSV, documents to JSON. With only 'structured',
                tables are also emitted as JSON records.

        Returns:
            paths: (list of str)
    """
    formats = tuple(formats)
    rendered = []
    if 'csv' in formats:
        for stem, frame in bundle.tables.items():
            rendered.append((f"{bundle.name}_{stem}.csv", render_csv(bundle, frame)))
    if 'structured' in formats:
        for stem, obj in bundle.documents.items():
            rendered.append((f"{bundle.name}_{stem}.json", render_structured(bundle, obj)))
        if 'csv' not in formats:
            for stem, frame in bundle.tables.items():
                records = frame.to_dict(orient='records')
                rendered.append((f"{bundle.name}_{stem}.json", render_structured(bundle, records)))

    os.makedirs(directory, exist_ok=True)
    paths = [write_atomic(os.path.join(directory, filename), text)
             for filename, text in rendered]
    log.info("wrote %d file(s) to %s", len(paths), directory)
    return paths
