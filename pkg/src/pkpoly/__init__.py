"""Chromatic state-sum polynomials of link diagrams and matched cubic graphs."""
