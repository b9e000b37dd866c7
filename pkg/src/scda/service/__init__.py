"""FastAPI layer over the augmentation core."""
