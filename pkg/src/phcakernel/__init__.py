"""Kernelization for Proper Helly Circular-arc Vertex Deletion."""
