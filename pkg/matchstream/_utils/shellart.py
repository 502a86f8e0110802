from functools import partial
from typing import Callable

from termcolor import colored


def _bold(color: str) -> Callable[[str], str]:
    return partial(colored, color=color, attrs=["bold"])


bold_blue = _bold("blue")
bold_green = _bold("green")
bold_red = _bold("red")
bold_white = _bold("white")
bold_yellow = _bold("yellow")
