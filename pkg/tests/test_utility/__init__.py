# tests/test_utility/__init__.py
