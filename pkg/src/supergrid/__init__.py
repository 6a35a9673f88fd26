"""Hamiltonian and longest (s,t)-paths in O-shaped supergrid graphs."""
