# makes sibling helper modules (polycorpus) importable from any test file
