# -*- coding: utf-8 -*-
from driftrate.cli import main

main()
