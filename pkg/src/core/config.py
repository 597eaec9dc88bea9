#!/usr/bin/env python3
"""
Model and run documents.

Both are JSON. Every document is validated against a fixed key set before
anything is computed, and unknown keys are rejected.
"""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import ConfigError, DomainError
from glsm.model import GLSMData, parse_phase
from qseries.context import QContext
from qseries.monomial import parse_complex, parse_fraction
from utils.logger import Logger

MODELS_DIR = Path(__file__).parent.parent / 'models'
DEBUG_ENV = 'GLSMLAB_DEBUG'

MODEL_KEYS = {'name', 'weights', 'rCharges', 'equivParams', 'phase', 'context'}
REQUIRED_MODEL_KEYS = {'weights', 'rCharges', 'equivParams'}

# JSON name -> QContext field
CONTEXT_KEYS = {
    'q': 'q',
    'productTerms': 'product_terms',
    'tolAbs': 'tol_abs',
    'tolRel': 'tol_rel',
    'genericityGap': 'genericity_gap',
    'zeroTol': 'zero_tol',
}

RUN_KEYS = {'model', 'context', 'phase', 'maxBeta', 'maxN', 'zSamples', 'delta', 'nodes'}

DEFAULT_Q = 0.1


def read_json(path: Path) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")


def _reject_unknown(doc: Dict[str, Any], allowed, where: str):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")


def parse_context_overrides(doc: Optional[Dict[str, Any]], where: str = "context") -> Dict[str, Any]:
    """Map a JSON context block onto QContext keyword arguments"""
    if not doc:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be an object")
    _reject_unknown(doc, CONTEXT_KEYS, where)
    overrides = {}
    for key, value in doc.items():
        try:
            if key == 'q':
                overrides['q'] = parse_complex(value)
            elif key == 'productTerms':
                overrides['product_terms'] = int(value)
            else:
                overrides[CONTEXT_KEYS[key]] = float(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{where}.{key}: {e}")
    return overrides


def build_context(overrides: Optional[Dict[str, Any]] = None) -> QContext:
    """QContext with q = 0.1 unless overridden; DomainError becomes ConfigError"""
    values = {'q': DEFAULT_Q}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return QContext(**values)
    except DomainError as e:
        raise ConfigError(f"invalid numerical context: {e}")


def model_from_json(doc: Dict[str, Any], where: str = "model") -> GLSMData:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be a JSON object")
    _reject_unknown(doc, MODEL_KEYS, where)
    missing = sorted(REQUIRED_MODEL_KEYS - set(doc))
    if missing:
        raise ConfigError(f"{where}: missing keys {missing}")
    try:
        weights = tuple(int(d) for d in doc['weights'])
        r_charges = tuple(parse_fraction(r) for r in doc['rCharges'])
        equiv_params = tuple(parse_complex(a) for a in doc['equivParams'])
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"{where}: {e}")
    return GLSMData(
        weights=weights,
        r_charges=r_charges,
        equiv_params=equiv_params,
        phase=parse_phase(doc.get('phase', '+')),
        name=str(doc.get('name', Path(where).stem)),
    )


def load_model(path) -> tuple:
    """
    Load a model document.

    Returns:
        (GLSMData, context overrides from the optional "context" block)
    """
    path = Path(path)
    Logger.debug(f"Loading model from: {path}")
    doc = read_json(path)
    model = model_from_json(doc, where=str(path))
    overrides = parse_context_overrides(doc.get('context'), where=f"{path}: context")
    Logger.debug(f"Loaded {model.describe()}")
    return model, overrides


def resolve_model_path(name_or_path: str) -> Path:
    """A path to a file, or the stem of a shipped model"""
    path = Path(name_or_path)
    if path.exists():
        return path
    shipped = MODELS_DIR / f"{name_or_path}.json"
    if shipped.exists():
        return shipped
    raise ConfigError(f"model {name_or_path!r} is neither a file nor a shipped model "
                      f"({', '.join(p.stem for p in shipped_model_paths())})")


def shipped_model_paths() -> List[Path]:
    return sorted(MODELS_DIR.glob('*.json'))


def shipped_models() -> Dict[str, GLSMData]:
    """Every readable shipped model by file stem; broken files are logged and skipped"""
    models = {}
    for path in shipped_model_paths():
        try:
            models[path.stem] = load_model(path)[0]
        except ConfigError as e:
            Logger.warning(f"Skipping model {path.name}: {e}")
    return models


# ---------------------------------------------------------------------------
# Run documents
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """
    Everything a command needs besides its own flags.

    CLI flags override values read from a run document; the context is the
    model's context block updated with the run's.
    """
    model_path: Optional[str] = None
    context: Dict[str, Any] = field(default_factory=dict)
    phase: Optional[int] = None
    max_beta: Optional[Fraction] = None
    max_n: Optional[int] = None
    z_samples: List[complex] = field(default_factory=list)
    delta: Optional[float] = None
    nodes: Optional[int] = None

    def merged(self, **overrides) -> 'RunConfig':
        """Copy with every non-None override applied"""
        values = dict(self.__dict__)
        for key, value in overrides.items():
            if value is None:
                continue
            if key == 'context':
                values['context'] = {**self.context, **value}
            else:
                values[key] = value
        return RunConfig(**values)


def run_config_from_json(doc: Dict[str, Any], where: str = "run config") -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be a JSON object")
    _reject_unknown(doc, RUN_KEYS, where)
    try:
        return RunConfig(
            model_path=doc.get('model'),
            context=parse_context_overrides(doc.get('context'), where=f"{where}: context"),
            phase=parse_phase(doc['phase']) if 'phase' in doc else None,
            max_beta=parse_fraction(doc['maxBeta']) if 'maxBeta' in doc else None,
            max_n=int(doc['maxN']) if 'maxN' in doc else None,
            z_samples=[parse_complex(z) for z in doc.get('zSamples', [])],
            delta=float(doc['delta']) if 'delta' in doc else None,
            nodes=int(doc['nodes']) if 'nodes' in doc else None,
        )
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"{where}: {e}")


def load_run_config(path) -> RunConfig:
    path = Path(path)
    Logger.debug(f"Loading run config from: {path}")
    config = run_config_from_json(read_json(path), where=str(path))
    if config.model_path and not Path(config.model_path).is_absolute():
        candidate = path.parent / config.model_path
        if candidate.exists():
            config.model_path = str(candidate)
    return config


def debug_from_env() -> bool:
    return os.environ.get(DEBUG_ENV, '').strip().lower() in ('1', 'true', 'yes', 'on')
