from pathlib import Path

from django.conf import settings

from workbench.models import StoredPrismatoid

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Store the bundled prismatoid tables in the database"

    def add_arguments(self, parser):
        parser.add_argument('--dir', default=None, help="directory of .prism files (default: WORKBENCH DATA_DIR)")

    def run(self, *args, **options):
        directory = Path(options['dir'] or settings.WORKBENCH["DATA_DIR"])
        created = 0
        for path in sorted(directory.glob("*.prism")):
            _, is_new = StoredPrismatoid.objects.update_or_create(
                name=path.stem,
                defaults={'source': path.read_text()},
            )
            created += is_new
            self.stdout.write(f"{'created' if is_new else 'updated'} {path.stem}")
        self.report({"loaded": created, "total": StoredPrismatoid.objects.count()})
