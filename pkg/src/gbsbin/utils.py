import json
import os
import numpy as np
from . import constants
from .gbs_core import GbsInstance, SqueezedInput, TransferMatrix, BinPartition
from .classical_models import ThermalInput, SquashedInput
from .distinguishability import PartialDistInstance
from .exceptions import DimensionError, DomainError, InstanceParsingError, PartitionError


def _load_json(filename_or_handle):
    if isinstance(filename_or_handle, str):
        with open(filename_or_handle, 'r') as fh:
            text = fh.read()
        name = os.path.basename(filename_or_handle)
    else:
        text = filename_or_handle.read()
        name = getattr(filename_or_handle, 'name', 'InMemoryFile')

    try:
        return json.loads(text), name
    except ValueError as ex:
        raise InstanceParsingError("%s is not valid JSON: %s" % (name, ex))


def _mode_vector(description, key, modes, name):
    values = description[key]
    if np.ndim(values) == 0:
        values = [values] * modes
    if len(values) != modes:
        raise DimensionError("%s: '%s' has %d entries for %d modes" % (name, key, len(values), modes))
    return values


def _network_from_dict(description, modes, name):
    network = description.get('network')
    if network is None:
        return TransferMatrix.identity(modes)

    try:
        entries = np.array(network['real'], dtype=float)
        if 'imag' in network:
            entries = entries + 1j * np.array(network['imag'], dtype=float)
    except (KeyError, TypeError, ValueError):
        raise InstanceParsingError("%s: 'network' needs 'real' (and optional 'imag') matrices" % name)

    if entries.shape != (modes, modes):
        raise DimensionError("%s: network has shape %s for %d modes" % (name, entries.shape, modes))

    return TransferMatrix(entries)


def instance_from_dict(description, name='InMemoryInstance'):
    """
    Builds an instance from its JSON description:

        {"modes": int, "input_model": "squeezed"|"thermal"|"squashed"|"partial",
         "squeezing": [real], "nbar": [real], "eta_ind": real,
         "network": {"real": [[...]], "imag": [[...]]}}

    Scalar squeezing or nbar values apply to every mode. A missing network is
    the identity.

    :param description: dictionary parsed from JSON
    :param name: label used in error messages
    :return: GbsInstance or PartialDistInstance
    """
    if not isinstance(description, dict):
        raise InstanceParsingError("%s: instance description must be a JSON object" % name)

    missing = [key for key in constants.INSTANCE_REQUIRED_KEYWORDS if key not in description]
    if missing:
        raise InstanceParsingError("%s is missing required keywords: %s" % (name, ', '.join(missing)))

    model = description['input_model']
    if model not in constants.INPUT_MODELS:
        raise InstanceParsingError(
            "%s: unknown input_model %r, use one of %s" % (name, model, ', '.join(constants.INPUT_MODELS))
        )

    missing = [key for key in constants.INSTANCE_MODEL_KEYWORDS[model] if key not in description]
    if missing:
        raise InstanceParsingError("%s: input_model %s needs %s" % (name, model, ', '.join(missing)))

    try:
        modes = int(description['modes'])
    except (TypeError, ValueError):
        raise InstanceParsingError("%s: 'modes' must be an integer" % name)
    if modes < 1:
        raise InstanceParsingError("%s: 'modes' must be at least 1" % name)

    network = _network_from_dict(description, modes, name)

    if model == 'thermal':
        return GbsInstance(ThermalInput(_mode_vector(description, 'nbar', modes, name)), network)

    squeezing = _mode_vector(description, 'squeezing', modes, name)
    if model == 'squeezed':
        return GbsInstance(SqueezedInput(squeezing), network)
    if model == 'squashed':
        return GbsInstance(SquashedInput(squeezing), network)

    eta_ind = description['eta_ind']
    if isinstance(eta_ind, (list, tuple, dict)):
        raise DomainError("%s: per-mode eta_ind values are not supported, give one scalar" % name)
    return PartialDistInstance(squeezing, network, eta_ind)


def read_instance(filename_or_handle):
    """
    Reads an instance JSON file.

    :param filename_or_handle: a path string or a text file handle
    :return: GbsInstance or PartialDistInstance
    """
    description, name = _load_json(filename_or_handle)
    return instance_from_dict(description, name)


def instance_to_dict(inst):
    """JSON-ready description of an instance, the inverse of instance_from_dict"""
    if isinstance(inst, PartialDistInstance):
        description = {'squeezing': inst.squeezing.tolist(), 'eta_ind': inst.eta_ind}
    elif isinstance(inst.inputs, ThermalInput):
        description = {'nbar': inst.inputs.nbar.tolist()}
    else:
        description = {'squeezing': inst.inputs.r.tolist()}

    entries = inst.network.entries
    description.update({
        'modes': inst.mode_count,
        'input_model': inst.input_model,
        'network': {'real': entries.real.tolist(), 'imag': entries.imag.tolist()}
    })
    return description


def parse_partition(text):
    """
    Partition from a JSON list of bins, a {"bins": [...]} object, or the
    inline form "0,1;2" (bins separated by ';', modes by ',').
    """
    text = text.strip()
    if text.startswith('[') or text.startswith('{'):
        try:
            bins = json.loads(text)
        except ValueError as ex:
            raise InstanceParsingError("partition is not valid JSON: %s" % ex)
        if isinstance(bins, dict):
            if 'bins' not in bins:
                raise InstanceParsingError("partition object needs a 'bins' entry")
            bins = bins['bins']
        if not isinstance(bins, list) or not all(isinstance(b, list) for b in bins):
            raise InstanceParsingError("partition must be a list of bins")
        return BinPartition(bins)

    try:
        bins = [[int(i) for i in group.split(',')] for group in text.split(';') if group.strip()]
    except ValueError:
        raise PartitionError("cannot parse inline partition %r" % text)
    return BinPartition(bins)


def read_partition(source, mode_count=None):
    """
    Reads a partition from a JSON file path, or parses it from text when no
    such file exists.

    :param source: path of a partition JSON file, or partition text
    :param mode_count: optional number of modes to range-check against
    :return: BinPartition
    """
    if os.path.isfile(source):
        with open(source, 'r') as fh:
            partition = parse_partition(fh.read())
    else:
        partition = parse_partition(source)

    if mode_count is not None:
        partition.validate(mode_count)
    return partition
