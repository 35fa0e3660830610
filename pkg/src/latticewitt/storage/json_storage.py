"""JSON persistence for configs, reports and module vectors."""

import json
import logging
from pathlib import Path
from typing import Any, List, Type, TypeVar

from pydantic import BaseModel, ValidationError

from ..errors import ConfigError, ScalarParseError
from ..lattice import LatticeEmbedding
from ..models import EmbeddingConfig, ModuleConfig
from ..modules.base import GradedModule, ModuleVector
from ..scalars import format_scalar, parse_scalar

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class ReportStorage:
    """Reads configs and writes reports as indented JSON.

    Reports carry no timestamps and keep the model field order, so the same
    inputs and seed always produce byte-identical files.
    """

    def _read_json(self, path: Path) -> Any:
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"Config file not found: {path}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid JSON: {e}")

    def _load_model(self, path: Path, model: Type[ModelT]) -> ModelT:
        data = self._read_json(path)
        try:
            return model.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Config file {path} failed validation: {e}")

    def load_embedding_config(self, path: Path) -> EmbeddingConfig:
        config = self._load_model(path, EmbeddingConfig)
        if len(config.images) != config.rank:
            raise ConfigError(f"Embedding of rank {config.rank} lists {len(config.images)} images")
        if any(len(image) != 2 for image in config.images):
            raise ConfigError("Every image must be a pair of scalar literals")
        return config

    def load_embedding(self, path: Path) -> LatticeEmbedding:
        """Load and build a lattice embedding.

        Raises:
            ConfigError: If the file is missing, malformed or has bad scalars
        """
        config = self.load_embedding_config(path)
        try:
            embedding = LatticeEmbedding.from_config(config)
        except ScalarParseError as e:
            raise ConfigError(f"Bad scalar in {path}: {e}")
        logger.info(f"Loaded {embedding} from {path}")
        return embedding

    def load_module_config(self, path: Path) -> ModuleConfig:
        config = self._load_model(path, ModuleConfig)
        try:
            for literal in config.beta:
                parse_scalar(literal)
        except ScalarParseError as e:
            raise ConfigError(f"Bad scalar in {path}: {e}")
        return config

    def save_config(self, config: BaseModel, path: Path) -> None:
        self.write_report(config, path)

    def write_report(self, report: BaseModel, path: Path) -> None:
        """Write one report model as indented JSON."""
        self.write_json(report.model_dump(mode="json"), path)

    def write_reports(self, reports: List[BaseModel], path: Path) -> None:
        self.write_json([r.model_dump(mode="json") for r in reports], path)

    def write_json(self, data: Any, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)
            f.write("\n")
        logger.debug(f"Wrote {path}")

    def dump_vector(self, module: GradedModule, v: ModuleVector) -> List[dict]:
        """Serialize as [{point, fiber}] with scalars in the literal grammar."""
        return [
            {"point": list(k), "fiber": [format_scalar(c) for c in v.components[k]]}
            for k in v.support()
        ]

    def save_vector(self, module: GradedModule, v: ModuleVector, path: Path) -> None:
        self.write_json(self.dump_vector(module, v), path)

    def load_vector(self, module: GradedModule, path: Path) -> ModuleVector:
        """Read a vector written by :meth:`save_vector`, checking fiber dimensions."""
        components = {}
        for entry in self._read_json(path):
            try:
                k = tuple(entry["point"])
                fiber = [parse_scalar(c) for c in entry["fiber"]]
            except (KeyError, TypeError) as e:
                raise ConfigError(f"Malformed vector entry in {path}: {e}")
            except ScalarParseError as e:
                raise ConfigError(f"Bad scalar in {path}: {e}")
            if len(fiber) != module.fiber_dim(k):
                raise ConfigError(
                    f"Fiber at {k} has {len(fiber)} coordinates, expected {module.fiber_dim(k)}"
                )
            components[k] = fiber
        return ModuleVector(components)
