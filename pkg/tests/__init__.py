"""Tests for SEC 10-K RAG Pipeline."""
