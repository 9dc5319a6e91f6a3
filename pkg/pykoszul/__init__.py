from __future__ import annotations

import importlib
import pkgutil

from pykoszul import jobs

_ = {
    name: importlib.import_module(f"{jobs.__name__}.{name}")
    for finder, name, _ in pkgutil.iter_modules(jobs.__path__)
}
