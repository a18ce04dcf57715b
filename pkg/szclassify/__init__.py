# =======================================================================================
# szclassify/__init__.py - Package Initialization
# =======================================================================================
"""
Schizophrenia vs. control classification from ERP/EEG features

Entropy-ranked feature ablation and from-scratch decision tree, k-NN and
RBF-SVM classifiers, with a seeded synthetic cohort generator for validation.
"""

__version__ = "1.0.0"
