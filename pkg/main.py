#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
fbm Main Application
--------------------
Launcher for the fbm command line tool: associated recurrences and definite-sum
solutions of linear recurrences in factorial polynomial bases.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

if __name__ == "__main__":
    from src.app import main
    main()
