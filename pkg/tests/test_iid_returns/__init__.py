# tests/test_iid_returns/__init__.py
