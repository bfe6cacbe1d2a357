// torus_cov implementation arrives with its header.
