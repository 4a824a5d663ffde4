"""
gbsbin.sample_data
~~~~~~~~~~~~~~~~~~
Photon-count sample files: reading, writing, binning and synthetic generation.
"""
from collections import namedtuple
import csv
import json
import os
import numpy as np
from . import constants
from .gbs_core import as_partition
from .writers import create_sample_file
from .exceptions import DomainError, SampleParsingError

BinnedCounts = namedtuple('BinnedCounts', ['counts', 'frequencies', 'n', 'total', 'partition', 'overflow'])

_MAX_COUNT = np.iinfo(np.int64).max


def _parse_jsonl_line(line):
    values = json.loads(line)
    if not isinstance(values, list):
        raise ValueError("not an array")
    return values


def _parse_csv_row(row):
    return [int(token) for token in row]


def _check_counts(values):
    # bool is an int subclass but never a photon count
    if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
        raise ValueError("non-integer count")
    if any(v < 0 for v in values):
        raise ValueError("negative count")
    if any(v > _MAX_COUNT for v in values):
        raise ValueError("count out of range")
    return values


class SampleSet(object):
    """
    Detector records of a photon-counting experiment, one vector of photon
    counts per mode for each shot.

    Files hold one record per line, either as a JSON array of integers
    (jsonl) or as comma-separated integers (csv, optionally with a header
    row). Blank lines are skipped. All malformed lines are collected and
    reported together by line number.

    :ivar name: file name of the imported sample file
    :ivar mode_count: number of modes m
    :ivar record_count: number of records
    :ivar records: int array of shape (record_count, m)
    :ivar provenance: dictionary describing where the records came from

    :param filename_or_handle: a path string or a text file handle
    :param fmt: 'jsonl' (default) or 'csv'
    """
    def __init__(self, filename_or_handle, fmt='jsonl'):
        if fmt not in constants.SAMPLE_FORMATS:
            raise DomainError("unknown sample format %r, use one of %s" % (fmt, constants.SAMPLE_FORMATS))

        if isinstance(filename_or_handle, str):
            fh = open(str(filename_or_handle), 'r')
        else:
            fh = filename_or_handle

        try:
            unused_path, self.name = os.path.split(fh.name)
        except (AttributeError, TypeError):
            self.name = 'InMemoryFile'

        try:
            if fmt == 'jsonl':
                records = self.__parse_jsonl(fh)
            else:
                records = self.__parse_csv(fh)
        finally:
            if isinstance(filename_or_handle, str):
                fh.close()

        if not records:
            raise SampleParsingError("%s contains no sample records" % self.name)

        self.records = np.array(records, dtype=np.int64)
        self.mode_count = self.records.shape[1]
        self.record_count = self.records.shape[0]
        self.provenance = {'source': self.name, 'format': fmt}

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.name)

    @classmethod
    def from_records(cls, records, mode_count=None, provenance=None, name='InMemorySamples'):
        """
        SampleSet built from an array of records, which may be empty when
        mode_count is given.
        """
        records = np.asarray(records, dtype=np.int64)
        if records.size == 0:
            if mode_count is None:
                raise DomainError("an empty sample set needs a mode count")
            records = records.reshape(0, int(mode_count))
        if records.ndim != 2:
            raise DomainError("records must form a 2-D array, got shape %s" % (records.shape,))
        if np.any(records < 0):
            raise DomainError("sample records contain negative counts")

        samples = cls.__new__(cls)
        samples.name = name
        samples.records = records
        samples.mode_count = records.shape[1]
        samples.record_count = records.shape[0]
        samples.provenance = {} if provenance is None else dict(provenance)
        return samples

    def __parse_lines(self, numbered_lines, parser):
        records = []
        bad_lines = []
        width = None

        for line_number, content in numbered_lines:
            try:
                values = _check_counts(parser(content))
            except (ValueError, TypeError):
                bad_lines.append(line_number)
                continue

            if width is None:
                width = len(values)
            if len(values) != width or width == 0:
                bad_lines.append(line_number)
                continue

            records.append(values)

        if bad_lines:
            raise SampleParsingError(
                "%s has malformed sample lines: %s" % (self.name, ', '.join(str(i) for i in bad_lines))
            )

        return records

    def __parse_jsonl(self, fh):
        lines = ((i, line) for i, line in enumerate(fh, start=1) if line.strip())
        return self.__parse_lines(lines, _parse_jsonl_line)

    def __parse_csv(self, fh):
        rows = [(i, row) for i, row in enumerate(csv.reader(fh), start=1) if any(t.strip() for t in row)]

        # a first row without integers is a header
        if rows:
            try:
                _parse_csv_row(rows[0][1])
            except ValueError:
                rows = rows[1:]

        return self.__parse_lines(rows, _parse_csv_row)

    def write_samples(self, filename, fmt='jsonl'):
        """
        Export the records as a sample file.

        :param filename: name of the exported file
        :param fmt: 'jsonl' (default) or 'csv'
        :return: None
        """
        if fmt not in constants.SAMPLE_FORMATS:
            raise DomainError("unknown sample format %r, use one of %s" % (fmt, constants.SAMPLE_FORMATS))

        with open(filename, 'w', newline='') as fh:
            create_sample_file(fh, self.records, fmt)


def ingest_samples(path, fmt='jsonl'):
    """Reads a sample file into a SampleSet"""
    return SampleSet(path, fmt=fmt)


def bin_samples(samples, partition, n=None, max_cells=constants.MAX_COUNT_TABLE_CELLS):
    """
    Sums the counts of each record within every bin and tallies the binned
    patterns.

    :param samples: SampleSet
    :param partition: BinPartition or list of bins
    :param n: optional per-bin cap; records with a bin count above it are
        tallied as overflow instead of widening the table
    :param max_cells: largest table size allocated, default is 1e7 cells
    :return: BinnedCounts(counts, frequencies, n, total, partition, overflow)
        where counts has shape (n + 1,) * B, n being the cap or else the
        largest observed bin count
    """
    partition = as_partition(partition, samples.mode_count)

    binned = np.stack([samples.records[:, list(modes)].sum(axis=1) for modes in partition.bins], axis=1)
    observed = int(binned.max()) if binned.size else 0
    if n is None:
        n = observed
    elif n < 0:
        raise DomainError("count cap must be non-negative, got %d" % n)
    n = min(int(n), observed)

    shape = (n + 1,) * partition.bin_count
    if (n + 1) ** partition.bin_count > max_cells:
        raise DomainError(
            "binned counts up to %d in %d bins need more than %d cells; give a count cap"
            % (n, partition.bin_count, max_cells)
        )

    within = np.all(binned <= n, axis=1)
    overflow = int(np.count_nonzero(~within))
    binned = binned[within]

    flat = np.ravel_multi_index(tuple(binned.T), shape) if binned.size else np.zeros(0, dtype=int)
    counts = np.bincount(flat, minlength=int(np.prod(shape))).reshape(shape)

    total = samples.record_count
    frequencies = counts / float(total) if total else np.zeros(shape)

    return BinnedCounts(counts, frequencies, n, total, partition, overflow)


def generate_samples(dist, count, seed, mode_count=None):
    """
    Draws records from a binned distribution. The table is renormalized over
    its retained patterns, and each binned count is placed on the lowest mode
    of its bin, so binning the records with the same partition reproduces
    the sampled patterns.

    :param dist: BinnedDistribution with a partition
    :param count: number of records, >= 0
    :param seed: int seed for numpy's default_rng
    :param mode_count: record length, defaults to one past the largest binned mode
    :return: SampleSet
    """
    if count < 0:
        raise DomainError("sample count must be non-negative, got %d" % count)
    if dist.partition is None:
        raise DomainError("generating samples needs a distribution with a partition")

    partition = dist.partition
    if mode_count is None:
        mode_count = max(partition.modes) + 1
    partition.validate(mode_count)

    weights = np.clip(dist.probs.reshape(-1), 0.0, None)
    if weights.sum() <= 0:
        raise DomainError("distribution has no probability mass to sample")

    rng = np.random.default_rng(seed)
    drawn = rng.choice(weights.size, size=count, p=weights / weights.sum())
    patterns = np.stack(np.unravel_index(drawn, dist.probs.shape), axis=1)

    records = np.zeros((count, mode_count), dtype=np.int64)
    for b, modes in enumerate(partition.bins):
        records[:, modes[0]] = patterns[:, b]

    provenance = {'source': 'generated', 'seed': seed, 'n': dist.n, 'partition': partition.to_list()}
    return SampleSet.from_records(records, mode_count, provenance)
