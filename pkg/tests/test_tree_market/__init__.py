# tests/test_tree_market/__init__.py
