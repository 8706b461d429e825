#!/usr/bin/env python
"""Command-line entry point: train, eval, baseline, sweep, metrics, plot."""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "buckrl.settings")
    from django.core.management import execute_from_command_line

    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
