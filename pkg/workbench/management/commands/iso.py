from workbench.complex_core import are_isomorphic
from workbench.prismatoid import Prismatoid, prismatoid_isomorphic

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Decide whether two files describe isomorphic complexes"

    def add_arguments(self, parser):
        parser.add_argument('first')
        parser.add_argument('second')
        parser.add_argument('--ignore-bases', action='store_true',
                            help="compare prismatoids as plain complexes")

    def run(self, *args, **options):
        first, second = self.load(options['first']), self.load(options['second'])
        both = isinstance(first, Prismatoid) and isinstance(second, Prismatoid)
        if both and not options['ignore_bases']:
            mapping = prismatoid_isomorphic(first, second)
        else:
            mapping = are_isomorphic(
                first.complex if isinstance(first, Prismatoid) else first,
                second.complex if isinstance(second, Prismatoid) else second,
            )
        values = {"isomorphic": mapping is not None}
        if mapping is not None:
            values["mapping"] = [f"{a}:{b}" for a, b in sorted(mapping.items())]
        self.report(values)
        return mapping is not None
