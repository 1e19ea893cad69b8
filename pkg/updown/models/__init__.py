"""Serializable records: exports, verification reports and layouts."""
