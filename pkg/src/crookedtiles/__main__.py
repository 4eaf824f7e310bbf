"""Entry point for ``python -m crookedtiles``."""

from .cli import main

raise SystemExit(main())
