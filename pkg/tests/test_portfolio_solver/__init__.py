# tests/test_portfolio_solver/__init__.py
