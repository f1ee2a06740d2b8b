"""Multimesh: trees of simplicial meshes with synchronized local operations"""
