"""Invariants, envelopes and priority-driven operation passes"""
