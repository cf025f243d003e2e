"""HTTP service wrapping the core package; the CLI talks to it in-process."""
