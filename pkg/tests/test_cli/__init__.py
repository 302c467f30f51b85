# tests/test_cli/__init__.py
