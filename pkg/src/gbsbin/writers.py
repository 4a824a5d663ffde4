"""
gbsbin.writers
~~~~~~~~~~~~~~
Text exports: binned distribution tables with a JSON sidecar, Haar average
tables and sample files.
"""
import csv
import json
import numpy as np
from . import constants
from .exceptions import DomainError


def _pattern_header(bin_count):
    return ['k_%d' % (i + 1) for i in range(bin_count)]


def _format_real(value):
    return '' if value is None else '%.17g' % value


def sidecar_path(filename):
    """Path of the JSON metadata written next to a table"""
    return '%s.json' % filename


def write_distribution(dist, filename):
    """
    Exports a binned distribution as CSV with header k_1..k_B,probability,
    one row per pattern in lexicographic order, plus a JSON sidecar holding
    n, B, partition, tail_bound, imag_residue and clamped_mass.

    :param dist: BinnedDistribution
    :param filename: CSV path; the sidecar goes to filename + '.json'
    :return: None
    """
    with open(filename, 'w', newline='') as fh:
        writer = csv.writer(fh)
        writer.writerow(_pattern_header(dist.bin_count) + ['probability'])
        for pattern in dist.patterns():
            writer.writerow(list(pattern) + [_format_real(dist.probs[pattern])])

    with open(sidecar_path(filename), 'w') as fh:
        json.dump(dist.sidecar(), fh, indent=2)


def read_distribution_table(filename):
    """
    Reads a CSV written by write_distribution back into an array table.

    :return: array of shape (n + 1,) * B
    """
    with open(filename, 'r', newline='') as fh:
        rows = list(csv.reader(fh))

    bin_count = len(rows[0]) - 1
    patterns = np.array([[int(v) for v in row[:bin_count]] for row in rows[1:]], dtype=int)
    values = np.array([float(row[bin_count]) for row in rows[1:]])

    table = np.zeros((patterns.max() + 1,) * bin_count)
    table[tuple(patterns.T)] = values
    return table


def write_haar_table(average, filename, m=None, r=None, law='exact'):
    """
    Exports a Haar average with columns k_1..k_B, mc_mean, mc_stderr,
    asymptotic, asymptotic_distinguishable. The asymptotic columns stay empty
    unless m and r are given.

    :param average: HaarAverage
    :param filename: CSV path
    :return: None
    """
    rows = average.to_rows(m, r, law)
    bin_count = average.mean.ndim

    with open(filename, 'w', newline='') as fh:
        writer = csv.writer(fh)
        writer.writerow(
            _pattern_header(bin_count) + ['mc_mean', 'mc_stderr', 'asymptotic', 'asymptotic_distinguishable']
        )
        for row in rows:
            writer.writerow(row[:bin_count] + [_format_real(v) for v in row[bin_count:]])


def create_sample_file(file_handle, records, fmt='jsonl'):
    """
    Writes photon-count records to an open text file handle.

    :param file_handle: writable text handle
    :param records: int array of shape (N, m)
    :param fmt: 'jsonl' (default) or 'csv'
    :return: the file handle
    """
    if fmt not in constants.SAMPLE_FORMATS:
        raise DomainError("unknown sample format %r, use one of %s" % (fmt, constants.SAMPLE_FORMATS))

    records = np.asarray(records, dtype=int)
    if fmt == 'jsonl':
        for record in records:
            file_handle.write(json.dumps(record.tolist()) + '\n')
    else:
        writer = csv.writer(file_handle)
        writer.writerow(['n_%d' % (i + 1) for i in range(records.shape[1])])
        writer.writerows(records.tolist())

    return file_handle
