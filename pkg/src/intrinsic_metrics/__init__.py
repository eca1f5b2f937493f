"""Intrinsic metrics of domains and quasiconformal special functions."""
