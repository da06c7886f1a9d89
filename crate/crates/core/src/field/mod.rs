//! Fock sector (stub).
