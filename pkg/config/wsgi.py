"""
WSGI entry point for the prismatoid workbench API.

Serve it with ``gunicorn config.wsgi`` to expose the stored prismatoids,
annealing records and sphere certificates over HTTP.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

application = get_wsgi_application()
