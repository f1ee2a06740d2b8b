"""LangGraph orchestration of the application pipelines"""
