#!/usr/bin/env python3
"""Main entry point for the virial coefficient workbench."""

from dotenv import load_dotenv

from virlab.cli import app

if __name__ == "__main__":
    load_dotenv()
    app(prog_name="virlab")
