# tests/test_stochastic_order/__init__.py
