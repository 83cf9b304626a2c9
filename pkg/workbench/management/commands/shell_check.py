from pathlib import Path

from workbench.complex_core import format_face
from workbench.formats import facet_order
from workbench.prismatoid import MINUS, PLUS, check_shelling
from workbench.reports import layer_shelling_report, shelling_report

from ._base import WorkbenchCommand


def read_order(path):
    """Facets listed one per line, with or without a leading ``facet`` keyword."""
    order = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].split()
        if line and line[0] == "facet":
            line = line[1:]
        if line and line[0] not in ("PRISMATOID", "COMPLEX", "dim", "base+", "base-"):
            order.append(frozenset(line))
    return order


class Command(WorkbenchCommand):
    help = "Check a prismatoid shelling given by file order, or search for a layer-monotone one"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--order', help="file listing the facets in shelling order (default: the input's order)")
        parser.add_argument('--direction', choices=[PLUS, MINUS, 'both'], default='both')
        parser.add_argument('--search', action='store_true', help="search for a layer-monotone shelling instead")
        parser.add_argument('--node-limit', type=int, default=None)

    def run(self, *args, **options):
        path = self.resolve(options['path'])
        prismatoid = self.load_prismatoid(path)
        if options['search']:
            values = layer_shelling_report(prismatoid, options['node_limit'])
            self.report(values)
            return values['shelling']

        order = read_order(options['order']) if options['order'] else facet_order(path)
        directions = [PLUS, MINUS] if options['direction'] == 'both' else [options['direction']]
        verdict = False
        for direction in directions:
            report = check_shelling(prismatoid, order, direction)
            values = shelling_report(report)
            self.report({key: value for key, value in values.items() if key != 'ridge_counts'})
            if report.verdict:
                verdict = True
                self.report({"first": format_face(order[0]), "last": format_face(order[-1])})
                break
        return verdict
