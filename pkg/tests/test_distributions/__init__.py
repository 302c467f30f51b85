# tests/test_distributions/__init__.py
