"""Pick the compiled kernel when it was built, else the pure-Python one.

Set CIRCORDER_PURE=1 to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("CIRCORDER_PURE") != "1":
    try:
        from ._kernel import eval_letters, eval_many  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        pass
if BACKEND == "python":
    from ._kernel_py import eval_letters, eval_many

__all__ = ["BACKEND", "eval_letters", "eval_many"]
