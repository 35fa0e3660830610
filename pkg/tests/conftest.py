"""Shared pytest fixtures for lattice Witt algebra tests."""

import shutil
import tempfile
from pathlib import Path

import pytest

from latticewitt.lattice import Coset, LatticeEmbedding, demo_embedding
from latticewitt.models import EmbeddingConfig, ModuleConfig, ModuleKind
from latticewitt.modules import SymbolSliceModule, TensorFieldModule
from latticewitt.scalars import RHO, CVec2
from latticewitt.storage.json_storage import ReportStorage


@pytest.fixture
def demo():
    """The demo lattice pi(e1) = (0,1), pi(e2) = (-3,-3+i)."""
    return demo_embedding()


@pytest.fixture
def generic_beta():
    """A base point whose coset avoids -rho and -2 rho."""
    return CVec2.of("1/3", "1/7+2/5i")


@pytest.fixture
def generic_coset(demo, generic_beta):
    """Generic coset over the demo lattice."""
    return Coset(generic_beta, demo)


@pytest.fixture
def minus_rho_coset(demo):
    """The coset -rho + Lambda."""
    return Coset(-RHO, demo)


@pytest.fixture
def minus_two_rho_coset(demo):
    """The coset -2 rho + Lambda."""
    return Coset(RHO * -2, demo)


@pytest.fixture
def sgamma(demo, generic_beta):
    """S_Gamma on the generic coset."""
    return SymbolSliceModule(demo, generic_beta)


@pytest.fixture
def m1(demo, generic_beta):
    """M^1 on the generic coset."""
    return TensorFieldModule(demo, generic_beta, 1)


@pytest.fixture
def m2(demo, generic_beta):
    """M^2 on the generic coset."""
    return TensorFieldModule(demo, generic_beta, 2)


@pytest.fixture
def failing_embedding():
    """Embedding (1,0), (0,i), which fails condition (C) at radius 3."""
    return LatticeEmbedding([CVec2.of(1, 0), CVec2.of(0, "i")])


@pytest.fixture
def temp_dir():
    """Create a temporary directory for config and report files."""
    temp = tempfile.mkdtemp(prefix="latticewitt_test_")
    yield Path(temp)
    shutil.rmtree(temp, ignore_errors=True)


@pytest.fixture
def storage():
    """Create a ReportStorage instance."""
    return ReportStorage()


@pytest.fixture
def demo_config_file(temp_dir, demo):
    """Demo embedding written as a config file."""
    path = temp_dir / "demo.json"
    ReportStorage().save_config(demo.to_config(), path)
    return path


@pytest.fixture
def failing_config_file(temp_dir):
    """Config file of the embedding that fails condition (C)."""
    path = temp_dir / "failing.json"
    ReportStorage().save_config(EmbeddingConfig(rank=2, images=[["1", "0"], ["0", "i"]]), path)
    return path


@pytest.fixture
def sgamma_config_file(temp_dir):
    """Module config of S_Gamma on the generic coset."""
    path = temp_dir / "sgamma.json"
    config = ModuleConfig(kind=ModuleKind.SGAMMA, beta=["1/3", "1/7+2/5i"])
    ReportStorage().save_config(config, path)
    return path


@pytest.fixture
def m2_config_file(temp_dir):
    """Module config of M^2 on the generic coset."""
    path = temp_dir / "m2.json"
    ReportStorage().save_config(
        ModuleConfig(kind=ModuleKind.MN, n=2, beta=["1/3", "1/7+2/5i"]), path
    )
    return path
