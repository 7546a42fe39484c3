"""HTTP service exposing the library as JSON endpoints."""

from .app import app, create_app

__all__ = ["app", "create_app"]
