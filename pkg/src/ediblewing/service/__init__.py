"""FastAPI service wrapping the design pipeline."""
