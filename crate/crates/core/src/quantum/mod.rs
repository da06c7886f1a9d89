//! Quantum evolution (stub).
