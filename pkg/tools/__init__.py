"""Golden-scenario evaluation tools for procmine."""
