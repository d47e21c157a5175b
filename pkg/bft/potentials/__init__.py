# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from typing import Any, Callable, Dict, Type, TypeVar

POTENTIALS: Dict[str, Any] = dict()  #: Collection of builtin potentials


TypeT = TypeVar("TypeT", bound=Type[Any])


def register(name: str) -> Callable[[TypeT], TypeT]:
    # this function registers all decorated potential classes
    # the result looks like:
    #
    # POTENTIALS = {'cosine': <class 'bft.potentials.potentials.Cosine'>}
    def inner(cls: TypeT) -> TypeT:
        cls.name = name
        POTENTIALS[name] = cls
        return cls

    return inner


# for registration all modules which contain potentials need to be imported
# the imports must be at the bottom of the module to avoid circular imports
from bft.potentials import potentials  # noqa: F401, E402
