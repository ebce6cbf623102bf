"""HTTP service subpackage; the FastAPI instance is walgebra.service.app:app."""
