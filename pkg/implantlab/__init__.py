# -*- coding: utf-8 -*-

"""Desk-scale imitation learning: adversarial IRL training, MPC at test time."""

__version__ = "0.1.0"

# flake8: noqa
