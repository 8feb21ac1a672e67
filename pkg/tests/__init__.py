"""dcoset 测试"""
