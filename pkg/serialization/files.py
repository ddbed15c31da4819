from pathlib import Path
import os
import tempfile

from errors import CorpusIOError


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write to a temporary file next to `path`, then rename it into place."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
    except OSError as e:
        raise CorpusIOError(path, e.strerror or str(e)) from e


def read_bytes(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise CorpusIOError(path, e.strerror or str(e)) from e


def list_files(root: Path, suffix: str) -> list:
    """Files under `root` with the given suffix, sorted by relative POSIX path."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusIOError(root, "not a directory")
    return sorted((p for p in root.rglob(f"*{suffix}") if p.is_file()), key=lambda p: p.relative_to(root).as_posix())
