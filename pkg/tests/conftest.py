from hypothesis import settings

# fixed example sequence and no per-example deadline, so runs are reproducible
settings.register_profile("repo", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("repo")
