from workbench.reports import pattern_report

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Print the incidence pattern of a prismatoid as arc lists"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--full', action='store_true', help="also list the arcs of the unreduced pattern")

    def run(self, *args, **options):
        values = pattern_report(self.load_prismatoid(options['path']))
        if not options['full']:
            values.pop('arcs')
        self.report(values)
