from hypothesis import settings

# Properties that enumerate pairs can spike per-example time; wall-clock
# deadlines would make them flaky.
settings.register_profile("suite", deadline=None, max_examples=100)
settings.load_profile("suite")
