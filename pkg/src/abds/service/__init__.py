"""HTTP service layer: FastAPI app factory and its pydantic models."""

from .app import create_app

__all__ = ["create_app"]
