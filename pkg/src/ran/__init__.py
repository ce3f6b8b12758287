"""ran - a self-hostable registry for neural-network development artifacts."""

__version__ = "0.1.0"
