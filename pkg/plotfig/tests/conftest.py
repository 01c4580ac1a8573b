import shutil
import subprocess

import pytest

SEMISPEC = shutil.which("semispec")


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory):
    """CSV/JSON artifacts produced by the primary tool's own CLI.

    plotfig consumes the primary component only through these files; the
    fixture shells out so no semispec import ever happens here.
    """
    if SEMISPEC is None:
        pytest.skip("semispec CLI not installed")
    out = tmp_path_factory.mktemp("artifacts")
    cmds = [
        [SEMISPEC, "butterfly", "--potential", "v1", "--den", "50",
         "--mode", "pd", "--n1", "64", "--out-dir", str(out)],
        [SEMISPEC, "compare", "--potential", "v1", "--q-range", "8:64",
         "--out-dir", str(out)],
        [SEMISPEC, "scaling", "--potential", "v1", "--q-range", "20:60",
         "--out-dir", str(out / "scaling")],
        [SEMISPEC, "bs-vs-spec", "--potential", "v1",
         "--h-list", "1/25,1/50,1/100", "--out-dir", str(out)],
    ]
    for cmd in cmds:
        subprocess.run(cmd, check=True, capture_output=True, text=True,
                       timeout=600)
    return out


@pytest.fixture()
def compare_csv(artifact_dir):
    return artifact_dir / "compare.csv"


@pytest.fixture()
def bands_csv(artifact_dir):
    return artifact_dir / "butterfly_pd_bands.csv"
