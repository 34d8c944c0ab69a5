from .option import Null, Option, Some  # noqa
