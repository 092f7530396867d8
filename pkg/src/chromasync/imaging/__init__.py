from .imageio import load_image, save_png, to_planes
from .synthgen import SynthConfig, fake_count, gen_corpus, gen_fake_like, gen_real_like, generate_image

__all__ = [
    "SynthConfig",
    "fake_count",
    "gen_corpus",
    "gen_fake_like",
    "gen_real_like",
    "generate_image",
    "load_image",
    "save_png",
    "to_planes",
]
