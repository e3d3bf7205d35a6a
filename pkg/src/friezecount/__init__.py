"""Exact enumeration of tame and tame regular friezes over Z/nZ."""
