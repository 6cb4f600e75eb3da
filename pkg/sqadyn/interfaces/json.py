import json
import numpy

from sqadyn.benchmark.sweeps import ArraySpec, SweepConfig
from sqadyn.models.disorder import DisorderSpec
from sqadyn.models.hamiltonians import ModelSpec, QubitParams
from sqadyn.response.stark import StarkTrack
from sqadyn.response.susceptibility import Susceptibility
from sqadyn.space.operators import HilbertSpace

__all__ = ["SqadynEncoder", "SqadynDecoder", "dumps", "loads"]

SERIALIZABLE = {"HilbertSpace": HilbertSpace,
                "QubitParams": QubitParams,
                "ModelSpec": ModelSpec,
                "DisorderSpec": DisorderSpec,
                "ArraySpec": ArraySpec,
                "SweepConfig": SweepConfig,
                "Susceptibility": Susceptibility,
                "StarkTrack": StarkTrack}

class SqadynEncoder(json.JSONEncoder):
    def default(self, obj):
        if hasattr(obj, 'to_serializable'):
            return obj.to_serializable()
        elif isinstance(obj, numpy.integer):
            return int(obj)
        elif isinstance(obj, numpy.floating):
            return float(obj)
        elif isinstance(obj, numpy.ndarray):
            return obj.tolist()
        elif isinstance(obj, complex):
            return [obj.real, obj.imag]
        return json.JSONEncoder.default(self, obj)

class SqadynDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.object_hook, *args, **kwargs)

    def object_hook(self, obj):
        kind = obj.get("type", "")
        if kind in SERIALIZABLE:
            return SERIALIZABLE[kind].from_serializable(obj)
        return obj

def dumps(obj, **kwargs):
    return json.dumps(obj, cls=SqadynEncoder, **kwargs)

def loads(text):
    return json.loads(text, cls=SqadynDecoder)
