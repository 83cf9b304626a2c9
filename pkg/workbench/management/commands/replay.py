from pathlib import Path

from workbench.annealer import replay
from workbench.formats import serialize_prismatoid

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Re-apply a flip trace to a prismatoid"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('trace')
        parser.add_argument('--out', help="write the resulting prismatoid here")

    def run(self, *args, **options):
        start = self.load_prismatoid(options['path'])
        lines = Path(options['trace']).read_text().splitlines()
        result = replay(start, lines)
        if options['out']:
            self.write_file(options['out'], serialize_prismatoid(result))
        self.report({
            "vertices": result.vertex_count,
            "facets": result.facet_count,
            "width": result.width,
        })
