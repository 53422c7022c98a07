"""Identity evaluators, hypothesis validation and the registry."""
