"""Exact scalar arithmetic and sparse exact linear algebra."""
