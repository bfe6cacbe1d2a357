// sde_lab implementation arrives with its header.
