# tests/utils/__init__.py
"""
测试辅助：随机事件树、随机分布与 hypothesis 策略
"""
