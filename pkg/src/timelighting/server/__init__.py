from .app import create_app, load_app_from_file

__all__ = ["create_app", "load_app_from_file"]
